"""FIMHE: fuzzy-intensity segmentation with adaptive clipping equalization.

The pipeline splits the grey range into four segments (see
:func:`fimhe.histogram.segment_bounds`), caps every bin at a per-segment
plateau (the segment's median bin count, or its mean bin count when the
median is zero), and equalizes each clipped segment into its own level
range with a half-bin-centred CDF.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .histogram import (
    L,
    GreyLevelMap,
    HistogramLike,
    SegmentBounds,
    as_gray_image,
    as_histogram,
    compute_histogram,
    round_half_up,
    segment_bounds,
)


class ThresholdSource(str, Enum):
    MEDIAN = "median"
    MEAN = "mean"
    EMPTY = "empty"


@dataclass(frozen=True)
class ClipThresholds:
    """Plateau limit of each segment, darkest segment first."""

    limits: tuple[float, float, float, float]
    sources: tuple[ThresholdSource, ThresholdSource, ThresholdSource, ThresholdSource]

    def is_empty(self, segment: int) -> bool:
        return self.sources[segment] is ThresholdSource.EMPTY


@dataclass(frozen=True)
class ClippedHistogram:
    bins: np.ndarray
    totals: tuple[float, float, float, float]


def _require_split(bounds: SegmentBounds):
    if bounds.degenerate:
        raise ValueError("degenerate segment bounds")


def clip_thresholds(hist: HistogramLike, bounds: SegmentBounds) -> ClipThresholds:
    hist = as_histogram(hist)
    _require_split(bounds)
    limits = []
    sources = []
    for lo, hi in bounds.segments():
        seg = hist.bins[lo : hi + 1].astype(np.float64)
        if not seg.any():
            limits.append(0.0)
            sources.append(ThresholdSource.EMPTY)
            continue
        # zero bins take part in the median
        median = float(np.median(seg))
        if median > 0:
            limits.append(median)
            sources.append(ThresholdSource.MEDIAN)
        else:
            limits.append(float(seg.mean()))
            sources.append(ThresholdSource.MEAN)
    return ClipThresholds(tuple(limits), tuple(sources))


def clip_histogram(
    hist: HistogramLike, bounds: SegmentBounds, thresholds: ClipThresholds
) -> ClippedHistogram:
    hist = as_histogram(hist)
    _require_split(bounds)
    bins = hist.bins.astype(np.float64)
    totals = []
    for (lo, hi), limit in zip(bounds.segments(), thresholds.limits):
        np.minimum(bins[lo : hi + 1], limit, out=bins[lo : hi + 1])
        totals.append(float(bins[lo : hi + 1].sum()))
    bins.setflags(write=False)
    return ClippedHistogram(bins=bins, totals=tuple(totals))


def transfer_map(clipped: ClippedHistogram, bounds: SegmentBounds) -> GreyLevelMap:
    """Equalize each clipped segment into its own output range.

    Within a segment ``[lo, hi]`` with PDF ``P`` and running CDF ``C``,
    level ``k`` maps to ``lo + (hi - lo) * (C(k) - P(k) / 2)``, rounded half
    up and kept inside ``[lo, hi]``. Segments with no mass map to themselves.
    """
    _require_split(bounds)
    if not any(t > 0 for t in clipped.totals):
        raise ValueError("all segments are empty")
    mapping = np.arange(L, dtype=np.int64)
    for (lo, hi), total in zip(bounds.segments(), clipped.totals):
        if total <= 0:
            continue
        pdf = clipped.bins[lo : hi + 1] / total
        cdf = np.cumsum(pdf)
        f = lo + (hi - lo) * (cdf - 0.5 * pdf)
        mapping[lo : hi + 1] = np.clip(round_half_up(f), lo, hi).astype(np.int64)
    return GreyLevelMap(mapping, segments=bounds.segments())


def fimhe_map(hist: HistogramLike) -> GreyLevelMap:
    """Full FIMHE lookup table for ``hist``; identity when segmentation is degenerate."""
    hist = as_histogram(hist)
    bounds = segment_bounds(hist)
    if bounds.degenerate:
        return GreyLevelMap(np.arange(L))
    thresholds = clip_thresholds(hist, bounds)
    return transfer_map(clip_histogram(hist, bounds, thresholds), bounds)


def enhance(image) -> np.ndarray:
    pixels = as_gray_image(image)
    return fimhe_map(compute_histogram(pixels)).apply(pixels)
