"""Grey-level histograms, intensity statistics and four-way segmentation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

L = 256
MAX_LEVEL = L - 1

# Raw threshold is clamped here so all four segments keep at least one level.
T_MIN = 1
T_MAX = L - 3


class EmptySegmentError(ValueError):
    """Raised when a grey-level range holds no pixels."""


def round_half_up(x):
    """Round to the nearest integer, ties going up (works on scalars and arrays)."""
    return np.floor(np.asarray(x, dtype=np.float64) + 0.5)


def as_gray_image(image) -> np.ndarray:
    """Validate ``image`` and return it as a 2D ``uint8`` array.

    Integer arrays outside [0, 255] and non-2D inputs are rejected rather
    than silently rescaled.
    """
    arr = np.asarray(image)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2D grey image, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError("image must have positive width and height")
    if arr.dtype == np.uint8:
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.floor(arr)):
            raise ValueError("grey levels must be integers")
    if arr.min() < 0 or arr.max() > MAX_LEVEL:
        raise ValueError("grey levels must lie in [0, 255]")
    return arr.astype(np.uint8)


@dataclass(frozen=True)
class Histogram:
    """256 bin counts of an 8-bit image."""

    bins: np.ndarray

    def __post_init__(self):
        bins = np.asarray(self.bins)
        if bins.shape != (L,):
            raise ValueError(f"histogram needs {L} bins, got shape {bins.shape}")
        if np.any(bins < 0):
            raise ValueError("histogram bins must be non-negative")
        bins = bins.astype(np.int64)
        bins.setflags(write=False)
        object.__setattr__(self, "bins", bins)

    @property
    def total(self) -> int:
        return int(self.bins.sum())

    def count(self, lo: int, hi: int) -> int:
        """Pixel count in the inclusive level range [lo, hi]."""
        return int(self.bins[lo : hi + 1].sum())


HistogramLike = Union[Histogram, np.ndarray]


def as_histogram(hist: HistogramLike) -> Histogram:
    return hist if isinstance(hist, Histogram) else Histogram(np.asarray(hist))


def compute_histogram(image) -> Histogram:
    pixels = as_gray_image(image)
    return Histogram(np.bincount(pixels.ravel(), minlength=L))


@dataclass(frozen=True)
class IntensityStats:
    mean: float
    stddev: float

    @property
    def fuzzy_measure(self) -> float:
        """Spread-to-mean ratio; 0 when the mean is 0."""
        return self.stddev / self.mean if self.mean > 0 else 0.0


def intensity_stats(hist: HistogramLike) -> IntensityStats:
    hist = as_histogram(hist)
    total = hist.total
    if total == 0:
        raise ValueError("empty histogram")
    p = hist.bins.astype(np.float64)
    m = np.arange(L, dtype=np.float64)
    mean = float(np.dot(m, p) / total)
    var = float(np.dot((m - mean) ** 2, p) / total)
    return IntensityStats(mean=mean, stddev=math.sqrt(var))


@dataclass(frozen=True)
class FuzzyThreshold:
    level: int
    raw: float
    degenerate: bool


def fuzzy_threshold(stats: IntensityStats) -> FuzzyThreshold:
    """Bright/dark split level ``L * stddev / mean``, rounded and clamped.

    The result is flagged degenerate when the mean or the spread is zero,
    i.e. there is no bright/dark structure to separate.
    """
    if stats.mean <= 0 or stats.stddev <= 0:
        return FuzzyThreshold(level=T_MIN, raw=0.0, degenerate=True)
    raw = L * stats.stddev / stats.mean
    level = int(round_half_up(raw))
    level = min(max(level, T_MIN), T_MAX)
    return FuzzyThreshold(level=level, raw=raw, degenerate=False)


def equal_mass_split(hist: HistogramLike, lo: int, hi: int) -> int:
    """Level ``k`` in [lo, hi-1] splitting the mass of [lo, hi] in half.

    Returns the smallest ``k`` whose cumulative count from ``lo`` reaches
    half of the range's count. If only ``k = hi`` would qualify, ``hi - 1``
    is returned so the upper part stays a non-empty level range.
    """
    hist = as_histogram(hist)
    if not 0 <= lo < hi <= MAX_LEVEL:
        raise ValueError(f"invalid split range [{lo}, {hi}]")
    seg = hist.bins[lo : hi + 1]
    total = int(seg.sum())
    if total == 0:
        raise EmptySegmentError(f"empty segment [{lo}, {hi}]")
    cum = np.cumsum(seg)
    # integer comparison: cum >= total / 2
    k = lo + int(np.argmax(2 * cum >= total))
    return min(k, hi - 1)


@dataclass(frozen=True)
class SegmentBounds:
    t_low: int
    t_mid: int
    t_high: int
    degenerate: bool = False

    def __post_init__(self):
        if not self.degenerate and not (0 <= self.t_low < self.t_mid < self.t_high < MAX_LEVEL):
            raise ValueError(
                f"bounds must satisfy 0 <= T_l < T < T_u < 255, got "
                f"({self.t_low}, {self.t_mid}, {self.t_high})"
            )

    def segments(self) -> tuple[tuple[int, int], ...]:
        """The four inclusive level ranges, darkest first."""
        return (
            (0, self.t_low),
            (self.t_low + 1, self.t_mid),
            (self.t_mid + 1, self.t_high),
            (self.t_high + 1, MAX_LEVEL),
        )


def segment_bounds(hist: HistogramLike) -> SegmentBounds:
    hist = as_histogram(hist)
    t = fuzzy_threshold(intensity_stats(hist))
    if t.degenerate:
        return SegmentBounds(0, t.level, MAX_LEVEL, degenerate=True)
    try:
        t_low = equal_mass_split(hist, 0, t.level)
        t_high = equal_mass_split(hist, t.level + 1, MAX_LEVEL)
    except EmptySegmentError:
        return SegmentBounds(0, t.level, MAX_LEVEL, degenerate=True)
    return SegmentBounds(t_low, t.level, t_high)


@dataclass(frozen=True)
class GreyLevelMap:
    """Input-to-output grey-level lookup table.

    ``segments`` records the inclusive level ranges the producing method
    equalized independently; each range maps into itself.
    """

    mapping: np.ndarray
    segments: tuple[tuple[int, int], ...] = ((0, MAX_LEVEL),)

    def __post_init__(self):
        mapping = np.asarray(self.mapping)
        if mapping.shape != (L,):
            raise ValueError(f"grey-level map needs {L} entries, got shape {mapping.shape}")
        if mapping.min() < 0 or mapping.max() > MAX_LEVEL:
            raise ValueError("mapped levels must lie in [0, 255]")
        mapping = mapping.astype(np.uint8)
        mapping.setflags(write=False)
        object.__setattr__(self, "mapping", mapping)

    def apply(self, image) -> np.ndarray:
        return self.mapping[as_gray_image(image)]

    def is_monotone(self) -> bool:
        return bool(np.all(np.diff(self.mapping.astype(np.int16)) >= 0))
