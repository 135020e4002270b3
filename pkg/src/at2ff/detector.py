"""Per-window type-2 fuzzy statistics and the adaptive corruption flag.

For one filter window the detector builds a family of Gaussian membership
functions whose means are the trimmed "mean of k-middle" statistics of the
window and whose shared width is the averaged trimmed deviation.  The
pointwise max/min envelope of that family gives upper and lower membership
curves; reducing the envelope over the window pixels yields the adaptive
thresholds that the maximum absolute luminance difference is scored
against.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .image import WindowView


class Type2Params(NamedTuple):
    """Trimmed-statistics family describing one window.

    ``means[k]`` / ``sigmas[k]`` are the mean-of-(k+1)-middle of the sorted
    window values and of the scaled absolute deviations from ``nu``.
    ``sigma_bar`` is the shared Gaussian width used for the whole envelope;
    ``k_lo`` / ``k_hi`` index the smallest / largest mean (first occurrence
    on ties).
    """

    means: np.ndarray
    sigmas: np.ndarray
    nu: float
    sigma_bar: float
    k_lo: int
    k_hi: int


class MembershipMatrix(NamedTuple):
    """Upper and lower envelope values at each window pixel, window order."""

    upper: np.ndarray
    lower: np.ndarray


class Thresholds(NamedTuple):
    """Adaptive pair extracted from a membership matrix, t_low <= t_high."""

    t_low: float
    t_high: float


def mean_of_k_middle(sorted_values, k: int) -> float:
    """Average of the centered order statistics of an ascending sequence.

    For odd N the 2k-1 middle elements are averaged, for even N the 2k
    middle elements; k ranges from 1 (median) to h = ceil(N/2) (full mean).
    The input must already be sorted ascending.
    """
    s = np.asarray(sorted_values, dtype=np.float64)
    n = s.size
    if n == 0:
        raise ValueError("empty input")
    h = (n + 1) // 2
    if not 1 <= k <= h:
        raise ValueError(f"k must be in [1, {h}] for {n} values, got {k}")
    if n % 2 == 1:
        sel = s[h - k:h + k - 1]
    else:
        sel = s[h - k:h + k]
    return float(sel.mean())


def m_ald(w: WindowView) -> float:
    """Maximum absolute luminance difference between the window pixels and
    the center pixel, in normalized units.

    The center itself participates (its own difference is 0, so the result
    is unchanged by its inclusion).
    """
    if w.values.size < 2:
        raise ValueError("window must contain at least 2 pixels")
    return float(np.max(np.abs(w.values - w.center)))


def gmf(x: float, m: float, sigma: float) -> float:
    """Gaussian membership exp(-((x-m)/sigma)^2 / 2).

    The degenerate width sigma == 0 is treated as the limit: an exact-match
    indicator (1 if x == m else 0).
    """
    if sigma == 0.0:
        return 1.0 if x == m else 0.0
    d = (x - m) / sigma
    return math.exp(-0.5 * d * d)


def detector_params(w: WindowView, epsilon: float) -> Type2Params:
    """Trimmed means, scaled trimmed deviations, and their aggregates.

    ``epsilon`` (> 1) scales the absolute deviations |p - nu| before they
    are trimmed into the sigma family.
    """
    if not epsilon > 1.0:
        raise ValueError("epsilon must exceed 1")
    if w.values.size < 2:
        raise ValueError("window must contain at least 2 pixels")
    s = np.sort(w.values)
    h = (s.size + 1) // 2
    means = np.array([mean_of_k_middle(s, k) for k in range(1, h + 1)])
    nu = float(means.mean())
    lam = np.sort(epsilon * np.abs(w.values - nu))
    sigmas = np.array([mean_of_k_middle(lam, k) for k in range(1, h + 1)])
    return Type2Params(
        means=means,
        sigmas=sigmas,
        nu=nu,
        sigma_bar=float(sigmas.mean()),
        k_lo=int(np.argmin(means)),
        k_hi=int(np.argmax(means)),
    )


def umf_lmf(params: Type2Params, x: float) -> tuple[float, float]:
    """Upper and lower membership of intensity ``x`` under the envelope.

    Every Gaussian in the family shares the width ``sigma_bar``, which
    guarantees lower <= upper pointwise.  Outside [m_lo, m_hi] the upper
    curve follows the nearer boundary Gaussian; inside, it is the max over
    the family.  The lower curve follows whichever boundary Gaussian is
    farther from ``x`` (split at the midpoint of m_lo and m_hi).
    """
    m_lo = float(params.means[params.k_lo])
    m_hi = float(params.means[params.k_hi])
    sb = params.sigma_bar
    if x < m_lo:
        upper = gmf(x, m_lo, sb)
    elif x > m_hi:
        upper = gmf(x, m_hi, sb)
    else:
        upper = max(gmf(x, float(m), sb) for m in params.means)
    if x <= 0.5 * (m_lo + m_hi):
        lower = gmf(x, m_hi, sb)
    else:
        lower = gmf(x, m_lo, sb)
    return upper, lower


def membership_matrix(params: Type2Params, w: WindowView) -> MembershipMatrix:
    """Evaluate the envelope at every window pixel, in window order."""
    n = w.values.size
    upper = np.empty(n)
    lower = np.empty(n)
    for i, p in enumerate(w.values):
        upper[i], lower[i] = umf_lmf(params, float(p))
    return MembershipMatrix(upper, lower)


def thresholds(mu: MembershipMatrix) -> Thresholds:
    """Reduce a membership matrix to the adaptive threshold pair.

    t_high is the max over all entries; t_low is the max over pixels of the
    per-pixel min (i.e. of the lower row, since the envelope is nested).
    """
    if mu.upper.size == 0:
        raise ValueError("empty membership matrix")
    t_high = float(max(mu.upper.max(), mu.lower.max()))
    t_low = float(np.max(np.minimum(mu.upper, mu.lower)))
    return Thresholds(t_low, t_high)


def fuzzy_flag(ald: float, t: Thresholds) -> float:
    """Corruption degree of the processed pixel, in [0, 1].

    Scores ``ald`` against the threshold pair: at or below t_low the pixel
    is lightly corrupted (flag = t_low), at or above t_high heavily
    corrupted (flag = t_high), linear in between.  A collapsed interval
    (t_low == t_high) is treated as heavy.
    """
    if t.t_high == t.t_low:
        return t.t_high
    if ald <= t.t_low:
        return t.t_low
    if ald >= t.t_high:
        return t.t_high
    return (ald - t.t_low) / (t.t_high - t.t_low)
