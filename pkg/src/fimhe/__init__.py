"""Grey-image contrast enhancement by fuzzy-intensity segmentation and adaptive clipping."""

from .adaptive import clip_histogram, clip_thresholds, enhance, fimhe_map, transfer_map
from .baselines import bbhe, bhepl, classic_he, dsihe, mhe, rsihe
from .histogram import (
    GreyLevelMap,
    Histogram,
    SegmentBounds,
    compute_histogram,
    equal_mass_split,
    fuzzy_threshold,
    intensity_stats,
    segment_bounds,
)
from .methods import MethodId, apply_method, grey_level_map
from .metrics import ambe, entropy, entropy_percent, evaluate, mse, psnr, ssim

__version__ = "0.1.0"

__all__ = [
    "GreyLevelMap",
    "Histogram",
    "MethodId",
    "SegmentBounds",
    "ambe",
    "apply_method",
    "bbhe",
    "bhepl",
    "classic_he",
    "clip_histogram",
    "clip_thresholds",
    "compute_histogram",
    "dsihe",
    "enhance",
    "entropy",
    "entropy_percent",
    "equal_mass_split",
    "evaluate",
    "fimhe_map",
    "fuzzy_threshold",
    "grey_level_map",
    "intensity_stats",
    "mhe",
    "mse",
    "psnr",
    "rsihe",
    "segment_bounds",
    "ssim",
    "transfer_map",
]
