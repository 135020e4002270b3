"""Restoration of corrupted pixels and the adaptive per-pixel driver.

Only pixels at the salt-and-pepper extremes (raw 0 or 255) are touched.
For each one, detector statistics classify the pixel and the non-extreme
"good" pixels of its window are combined by Gaussian weights into a
replacement value; the corruption flag controls how far the pixel moves
toward that replacement.  Windows with no good pixels grow until
``f_max``, after which the robust trimmed center is used.

Filtering is non-recursive: every window reads the original input image,
so the result is independent of pixel processing order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .image import WindowView, _require_image


@dataclass(frozen=True)
class DenoiseConfig:
    """Tuning knobs of the adaptive filter.

    ``epsilon`` scales absolute deviations in both stages and must exceed
    1.  ``f_init`` is the starting half-window: "auto" picks 1 for images
    whose estimated noise density is at most ``density_switch`` and 2
    otherwise.  ``tau_hom`` is the spread below which a window is treated
    as homogeneous and the trimmed center is returned directly (default:
    one quantization level).
    """

    epsilon: float = 1.2
    f_init: int | str = "auto"
    f_max: int = 5
    tau_hom: float = 1.0 / 255.0
    density_switch: float = 0.5

    def __post_init__(self):
        if not self.epsilon > 1.0:
            raise ValueError("epsilon must exceed 1")
        if self.f_init != "auto":
            if self.f_init not in (1, 2):
                raise ValueError("f_init must be 'auto', 1, or 2")
            if self.f_init > self.f_max:
                raise ValueError("f_init cannot exceed f_max")
        if self.f_max < 1:
            raise ValueError("f_max must be >= 1")
        if not self.tau_hom > 0.0:
            raise ValueError("tau_hom must be positive")
        if not 0.0 <= self.density_switch <= 1.0:
            raise ValueError("density_switch must lie in [0, 1]")


class GoodStats(NamedTuple):
    """Mean and scaled mean absolute deviation of a good-pixel set."""

    nu: float
    sigma: float


def good_pixels(w: WindowView) -> np.ndarray:
    """Window values that are not at an extreme (0 or 1), window order."""
    v = w.values
    return v[(v != 0.0) & (v != 1.0)]


def good_stats(good: np.ndarray, epsilon: float) -> GoodStats:
    """Mean of the good pixels and epsilon-scaled mean absolute deviation."""
    g = np.asarray(good, dtype=np.float64)
    if g.size == 0:
        raise ValueError("empty good-pixel set")
    nu = float(g.mean())
    sigma = float(epsilon * np.abs(g - nu).mean())
    return GoodStats(nu, sigma)


def weights(good: np.ndarray, stats: GoodStats) -> np.ndarray:
    """Gaussian weight of each good pixel around the set's mean.

    A zero spread degenerates to equal weights of 1.
    """
    g = np.asarray(good, dtype=np.float64)
    if stats.sigma == 0.0:
        return np.ones_like(g)
    return np.exp(-0.5 * ((g - stats.nu) / stats.sigma) ** 2)


def weighted_mean(good: np.ndarray, wts: np.ndarray) -> float:
    """Normalized weighted average of the good pixels."""
    g = np.asarray(good, dtype=np.float64)
    w = np.asarray(wts, dtype=np.float64)
    total = float(w.sum())
    assert total > 0.0, "total weight must be positive"
    return float((w * g).sum() / total)


def blend(p: float, p_new: float, flag: float) -> float:
    """Move ``p`` toward the replacement ``p_new`` by the flag amount."""
    return (1.0 - flag) * p + flag * p_new


def estimate_noise_density(img) -> float:
    """Fraction of pixels at the 8-bit extremes (0 or 255)."""
    a = _require_image(img)
    return float(np.count_nonzero((a == 0) | (a == 255)) / a.size)


def initial_half_size(img, cfg: DenoiseConfig) -> int:
    """Starting half-window for ``img`` under the config's policy."""
    if cfg.f_init == "auto":
        pick = 1 if estimate_noise_density(img) <= cfg.density_switch else 2
        return min(pick, cfg.f_max)
    return int(cfg.f_init)


def denoise_pixel(img, row: int, col: int, cfg: DenoiseConfig | None = None) -> int:
    """Filter a single pixel of ``img``; non-extreme pixels pass through.

    The corruption score fed to the flag comparison is the maximum
    absolute luminance difference on the 8-bit scale, so any window with
    real structure flags an extreme pixel as heavily corrupted and the
    replacement applies in full.
    """
    cfg = cfg or DenoiseConfig()
    a = _require_image(img)
    height, width = a.shape
    if not (0 <= row < height and 0 <= col < width):
        raise IndexError(f"pixel ({row}, {col}) outside {height}x{width} image")
    raw = int(a[row, col])
    if raw != 0 and raw != 255:
        return raw
    img_f = a.astype(np.float64) / 255.0
    return int(
        _kernels.restore_pixel(
            img_f, raw, row, col,
            cfg.epsilon, initial_half_size(a, cfg), cfg.f_max, cfg.tau_hom,
        )
    )


def denoise_image(img, cfg: DenoiseConfig | None = None) -> np.ndarray:
    """Filter every pixel of ``img``; equivalent to mapping
    :func:`denoise_pixel` over the grid, but in one compiled pass.

    The input is never mutated and all windows read the original noisy
    image.
    """
    cfg = cfg or DenoiseConfig()
    a = _require_image(img)
    img_f = a.astype(np.float64) / 255.0
    return _kernels.denoise_kernel(
        a, img_f, cfg.epsilon, initial_half_size(a, cfg), cfg.f_max, cfg.tau_hom
    )
