"""Classical histogram-equalization methods used as comparison baselines.

All of them reduce to equalizing one or more contiguous level ranges of a
(possibly clipped) histogram; :func:`equalize_segments` is that shared core.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .histogram import (
    L,
    MAX_LEVEL,
    GreyLevelMap,
    HistogramLike,
    as_histogram,
)


def _require_mass(hist):
    hist = as_histogram(hist)
    if hist.total == 0:
        raise ValueError("empty histogram")
    return hist


def _segments_from_splits(splits: Sequence[int]) -> tuple[tuple[int, int], ...]:
    """Turn ascending split levels into inclusive ranges ``[0, s0], [s0+1, s1], ...``."""
    edges = [-1, *sorted(set(s for s in splits if 0 <= s < MAX_LEVEL)), MAX_LEVEL]
    return tuple((a + 1, b) for a, b in zip(edges[:-1], edges[1:]))


def equalize_segments(bins: np.ndarray, segments) -> GreyLevelMap:
    """Map each range ``[lo, hi]`` onto itself via ``lo + round((hi - lo) * CDF)``.

    ``bins`` may be real-valued (clipped). Empty ranges map to themselves.
    """
    bins = np.asarray(bins, dtype=np.float64)
    mapping = np.arange(L, dtype=np.int64)
    for lo, hi in segments:
        seg = bins[lo : hi + 1]
        total = seg.sum()
        if total <= 0:
            continue
        # scale before dividing so integer histograms round exactly
        scaled = (hi - lo) * np.cumsum(seg) / total
        mapping[lo : hi + 1] = lo + np.floor(scaled + 0.5).astype(np.int64)
    np.clip(mapping, 0, MAX_LEVEL, out=mapping)
    return GreyLevelMap(mapping, segments=tuple(segments))


def mean_split(hist: HistogramLike) -> int:
    """Floor of the mean grey level, in exact integer arithmetic."""
    hist = as_histogram(hist)
    return int(np.dot(np.arange(L, dtype=np.int64), hist.bins)) // hist.total


def median_level(bins: np.ndarray, lo: int = 0, hi: int = MAX_LEVEL) -> int | None:
    """Smallest level in [lo, hi] whose cumulative count reaches half the range's mass."""
    seg = np.asarray(bins)[lo : hi + 1]
    total = seg.sum()
    if total <= 0:
        return None
    return lo + int(np.argmax(2 * np.cumsum(seg) >= total))


def classic_he(hist: HistogramLike) -> GreyLevelMap:
    hist = _require_mass(hist)
    return equalize_segments(hist.bins, ((0, MAX_LEVEL),))


def bbhe(hist: HistogramLike) -> GreyLevelMap:
    """Brightness-preserving bi-histogram equalization (split at floor of the mean)."""
    hist = _require_mass(hist)
    return equalize_segments(hist.bins, _segments_from_splits([mean_split(hist)]))


def dsihe(hist: HistogramLike) -> GreyLevelMap:
    """Dualistic sub-image equalization (split at the grey-level median)."""
    return rsihe(hist, 1)


def rsihe(hist: HistogramLike, r: int = 2) -> GreyLevelMap:
    """Recursive sub-image equalization: ``r`` rounds of median splitting, ``2**r`` ranges."""
    hist = _require_mass(hist)
    if r < 1:
        raise ValueError("recursion depth r must be >= 1 (r = 0 is classic HE)")
    segments = [(0, MAX_LEVEL)]
    for _ in range(r):
        refined = []
        for lo, hi in segments:
            m = median_level(hist.bins, lo, hi)
            if m is None or m >= hi:
                refined.append((lo, hi))
            else:
                refined.extend([(lo, m), (m + 1, hi)])
        segments = refined
    return equalize_segments(hist.bins, segments)


def bhepl(hist: HistogramLike) -> GreyLevelMap:
    """Bi-histogram equalization with each half clipped at its mean bin count."""
    hist = _require_mass(hist)
    segments = _segments_from_splits([mean_split(hist)])
    bins = hist.bins.astype(np.float64)
    for lo, hi in segments:
        seg = bins[lo : hi + 1]
        np.minimum(seg, seg.mean(), out=seg)
    return equalize_segments(bins, segments)


def mhe(hist: HistogramLike) -> GreyLevelMap:
    """Global HE after clipping every bin at the mean bin count ``total / 256``."""
    hist = _require_mass(hist)
    bins = np.minimum(hist.bins.astype(np.float64), hist.total / L)
    return equalize_segments(bins, ((0, MAX_LEVEL),))
