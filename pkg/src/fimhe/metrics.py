"""Image-quality indices: entropy, MSE/PSNR, AMBE and SSIM."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import gaussian_filter

from .histogram import MAX_LEVEL, HistogramLike, as_gray_image, as_histogram, compute_histogram

PEAK = float(MAX_LEVEL)
C1 = (0.01 * PEAK) ** 2
C2 = (0.03 * PEAK) ** 2


def entropy(hist: HistogramLike) -> float:
    """Shannon entropy of the grey-level distribution, in bits."""
    hist = as_histogram(hist)
    total = hist.total
    if total == 0:
        raise ValueError("empty histogram")
    p = hist.bins[hist.bins > 0] / total
    return float(-np.sum(p * np.log2(p)))


def entropy_percent(e_out: float, e_in: float) -> float:
    if e_in <= 0:
        raise ValueError("input entropy must be positive")
    return 100.0 * e_out / e_in


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = as_gray_image(x).astype(np.float64)
    y = as_gray_image(y).astype(np.float64)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return x, y


def mse(x, y) -> float:
    x, y = _pair(x, y)
    return float(np.mean((x - y) ** 2))


def psnr(x, y) -> float:
    """Peak signal-to-noise ratio in dB; ``math.inf`` for identical images."""
    err = mse(x, y)
    if err == 0:
        return math.inf
    return 10.0 * math.log10(PEAK**2 / err)


def ambe(x, y) -> float:
    """Absolute mean brightness error."""
    x, y = _pair(x, y)
    return abs(float(x.mean()) - float(y.mean()))


def ssim(x, y, *, window: bool = False) -> float:
    """Structural similarity of two grey images.

    By default the statistics are taken over the whole image (one window).
    With ``window=True`` the usual mean SSIM over 11x11 Gaussian windows
    (sigma 1.5) is returned instead, cropping the filter border.
    """
    x, y = _pair(x, y)
    if window:
        return _windowed_ssim(x, y)
    mx, my = x.mean(), y.mean()
    dx, dy = x - mx, y - my
    vx, vy = np.mean(dx * dx), np.mean(dy * dy)
    cov = np.mean(dx * dy)
    num = (2 * mx * my + C1) * (2 * cov + C2)
    den = (mx * mx + my * my + C1) * (vx + vy + C2)
    return float(num / den)


def _windowed_ssim(x: np.ndarray, y: np.ndarray, sigma: float = 1.5, truncate: float = 3.5) -> float:
    radius = int(truncate * sigma + 0.5)
    if min(x.shape) <= 2 * radius:
        raise ValueError(f"windowed SSIM needs images larger than {2 * radius + 1} pixels per side")

    def blur(a):
        return gaussian_filter(a, sigma=sigma, truncate=truncate, mode="reflect")

    mx, my = blur(x), blur(y)
    vx = blur(x * x) - mx * mx
    vy = blur(y * y) - my * my
    cov = blur(x * y) - mx * my
    s = ((2 * mx * my + C1) * (2 * cov + C2)) / ((mx * mx + my * my + C1) * (vx + vy + C2))
    return float(s[radius:-radius, radius:-radius].mean())


@dataclass(frozen=True)
class MetricsReport:
    entropy_out: float
    entropy_pct: float
    psnr_db: float
    ambe: float
    ssim: float

    def as_dict(self) -> dict[str, float]:
        return {
            "entropy": self.entropy_out,
            "entropy_pct": self.entropy_pct,
            "psnr": self.psnr_db,
            "ambe": self.ambe,
            "ssim": self.ssim,
        }


def evaluate(original, enhanced, *, ssim_window: bool = False) -> MetricsReport:
    """All indices of ``enhanced`` against ``original``.

    ``entropy_pct`` is NaN when the original has zero entropy (a constant image).
    """
    e_in = entropy(compute_histogram(original))
    e_out = entropy(compute_histogram(enhanced))
    pct = entropy_percent(e_out, e_in) if e_in > 0 else math.nan
    return MetricsReport(
        entropy_out=e_out,
        entropy_pct=pct,
        psnr_db=psnr(original, enhanced),
        ambe=ambe(original, enhanced),
        ssim=ssim(original, enhanced, window=ssim_window),
    )
