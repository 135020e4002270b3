"""Classical comparison filters: plain and truncated median.

Both use the same truncated-window border policy as the adaptive filter
(only in-bounds pixels participate) and round even-count medians half
away from zero.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .image import _require_image


def _check_half_size(f: int) -> int:
    if f < 1:
        raise ValueError("half_size must be >= 1")
    return int(f)


def median_filter(img, half_size: int = 1) -> np.ndarray:
    """Replace each pixel with the median of its truncated window."""
    a = _require_image(img)
    return _kernels.median_kernel(a, _check_half_size(half_size))


def truncated_median_filter(img, half_size: int = 1) -> np.ndarray:
    """Median filter with one-sided sample truncation toward the mode.

    Per pixel the sorted window is cut about its median: samples farther
    from the median than the nearer extreme are discarded, and the median
    of the remainder is taken.  Symmetric samples reduce to the plain
    median.
    """
    a = _require_image(img)
    return _kernels.tmf_kernel(a, _check_half_size(half_size))
