"""Compiled per-pixel kernels for the adaptive filter and the baselines.

These mirror the pure-Python operations in :mod:`at2ff.detector` and
:mod:`at2ff.denoiser`, fused into single passes so a megapixel image
filters in seconds.  All kernels are single-threaded and IEEE-strict
(no fastmath), so results are bit-stable across runs and machines.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _gmf(x, m, s):
    if s == 0.0:
        return 1.0 if x == m else 0.0
    d = (x - m) / s
    return np.exp(-0.5 * d * d)


@njit(cache=True)
def _k_middle_means(sorted_vals, out):
    # out[k-1] = mean of the centered 2k-1 (odd n) or 2k (even n) elements.
    n = sorted_vals.size
    h = (n + 1) // 2
    lo = h - 1
    hi = h - 1 if n % 2 == 1 else h
    acc = 0.0
    for i in range(lo, hi + 1):
        acc += sorted_vals[i]
    out[0] = acc / (hi - lo + 1)
    for k in range(2, h + 1):
        lo -= 1
        hi += 1
        acc += sorted_vals[lo] + sorted_vals[hi]
        out[k - 1] = acc / (hi - lo + 1)
    return h


@njit(cache=True)
def _upper(x, means, h, m_lo, m_hi, sb):
    if x < m_lo:
        return _gmf(x, m_lo, sb)
    if x > m_hi:
        return _gmf(x, m_hi, sb)
    best = 0.0
    for k in range(h):
        g = _gmf(x, means[k], sb)
        if g > best:
            best = g
    return best


@njit(cache=True)
def _lower(x, m_lo, m_hi, sb):
    if x <= 0.5 * (m_lo + m_hi):
        return _gmf(x, m_hi, sb)
    return _gmf(x, m_lo, sb)


@njit(cache=True)
def _denorm(x):
    v = int(np.floor(x * 255.0 + 0.5))
    if v < 0:
        v = 0
    elif v > 255:
        v = 255
    return v


@njit(cache=True)
def restore_pixel(img, raw, i, j, eps, f_init, f_max, tau):
    """Estimate one corrupted pixel (raw value 0 or 255) of ``img``.

    ``img`` is the full image normalized to [0, 1]; the window is grown
    from ``f_init`` to at most ``f_max`` while it contains no good pixels.
    Returns the restored 8-bit value.
    """
    height, width = img.shape
    center = img[i, j]
    cap = (2 * f_max + 1) * (2 * f_max + 1)
    vals = np.empty(cap, np.float64)
    work = np.empty(cap, np.float64)
    means = np.empty((cap + 1) // 2, np.float64)
    sigmas = np.empty((cap + 1) // 2, np.float64)

    f = f_init
    while True:
        r0 = i - f if i - f > 0 else 0
        r1 = i + f if i + f < height - 1 else height - 1
        c0 = j - f if j - f > 0 else 0
        c1 = j + f if j + f < width - 1 else width - 1
        n = 0
        for r in range(r0, r1 + 1):
            for c in range(c0, c1 + 1):
                vals[n] = img[r, c]
                n += 1

        ald = 0.0
        for t in range(n):
            d = vals[t] - center
            if d < 0.0:
                d = -d
            if d > ald:
                ald = d

        for t in range(n):
            work[t] = vals[t]
        sv = work[:n]
        sv.sort()
        h = _k_middle_means(sv, means)
        nu = 0.0
        for k in range(h):
            nu += means[k]
        nu /= h

        for t in range(n):
            d = vals[t] - nu
            work[t] = eps * (d if d >= 0.0 else -d)
        dv = work[:n]
        dv.sort()
        _k_middle_means(dv, sigmas)
        sigma_bar = 0.0
        for k in range(h):
            sigma_bar += sigmas[k]
        sigma_bar /= h

        k_lo = 0
        k_hi = 0
        for k in range(1, h):
            if means[k] < means[k_lo]:
                k_lo = k
            if means[k] > means[k_hi]:
                k_hi = k
        m_lo = means[k_lo]
        m_hi = means[k_hi]

        t_high = 0.0
        t_low = 0.0
        for t in range(n):
            u = _upper(vals[t], means, h, m_lo, m_hi, sigma_bar)
            lo = _lower(vals[t], m_lo, m_hi, sigma_bar)
            if u > t_high:
                t_high = u
            if lo > t_low:
                t_low = lo

        # The corruption score enters the flag comparison on the 8-bit
        # scale: any window with real structure then pins the flag at
        # t_high, and the interpolation band engages only for windows
        # whose spread is below one quantization level.
        score = 255.0 * ald
        if t_high == t_low:
            flag = t_high
        elif score <= t_low:
            flag = t_low
        elif score >= t_high:
            flag = t_high
        else:
            flag = (score - t_low) / (t_high - t_low)

        uc = _upper(center, means, h, m_lo, m_hi, sigma_bar)
        lc = _lower(center, m_lo, m_hi, sigma_bar)
        if 0.5 * (uc + lc) >= t_high:
            return raw
        if sigma_bar <= tau:
            return _denorm(nu)

        good_n = 0
        good_sum = 0.0
        for t in range(n):
            v = vals[t]
            if v != 0.0 and v != 1.0:
                good_n += 1
                good_sum += v
        if good_n == 0:
            if f >= f_max:
                return _denorm(nu)
            f += 1
            continue

        good_nu = good_sum / good_n
        dev_sum = 0.0
        for t in range(n):
            v = vals[t]
            if v != 0.0 and v != 1.0:
                d = v - good_nu
                dev_sum += d if d >= 0.0 else -d
        good_sigma = eps * dev_sum / good_n
        if good_sigma == 0.0:
            p_new = good_nu
        else:
            w_sum = 0.0
            acc = 0.0
            for t in range(n):
                v = vals[t]
                if v != 0.0 and v != 1.0:
                    d = (v - good_nu) / good_sigma
                    wgt = np.exp(-0.5 * d * d)
                    w_sum += wgt
                    acc += wgt * v
            p_new = acc / w_sum
        return _denorm((1.0 - flag) * center + flag * p_new)


@njit(cache=True)
def denoise_kernel(raw, img, eps, f_init, f_max, tau):
    height, width = raw.shape
    out = np.empty_like(raw)
    for i in range(height):
        for j in range(width):
            r = raw[i, j]
            if r != 0 and r != 255:
                out[i, j] = r
            else:
                out[i, j] = restore_pixel(img, r, i, j, eps, f_init, f_max, tau)
    return out


@njit(cache=True)
def median_kernel(raw, f):
    height, width = raw.shape
    out = np.empty_like(raw)
    buf = np.empty((2 * f + 1) * (2 * f + 1), np.float64)
    for i in range(height):
        for j in range(width):
            r0 = i - f if i - f > 0 else 0
            r1 = i + f if i + f < height - 1 else height - 1
            c0 = j - f if j - f > 0 else 0
            c1 = j + f if j + f < width - 1 else width - 1
            n = 0
            for r in range(r0, r1 + 1):
                for c in range(c0, c1 + 1):
                    buf[n] = raw[r, c]
                    n += 1
            s = buf[:n]
            s.sort()
            if n % 2 == 1:
                out[i, j] = int(s[n // 2])
            else:
                # average of two 8-bit values, rounded half away from zero
                out[i, j] = (int(s[n // 2 - 1]) + int(s[n // 2]) + 1) // 2
    return out


@njit(cache=True)
def tmf_kernel(raw, f):
    # Truncate the sorted window one-sidedly about its median (toward the
    # nearer extreme), then take the median of what remains.
    height, width = raw.shape
    out = np.empty_like(raw)
    buf = np.empty((2 * f + 1) * (2 * f + 1), np.float64)
    for i in range(height):
        for j in range(width):
            r0 = i - f if i - f > 0 else 0
            r1 = i + f if i + f < height - 1 else height - 1
            c0 = j - f if j - f > 0 else 0
            c1 = j + f if j + f < width - 1 else width - 1
            n = 0
            for r in range(r0, r1 + 1):
                for c in range(c0, c1 + 1):
                    buf[n] = raw[r, c]
                    n += 1
            s = buf[:n]
            s.sort()
            if n % 2 == 1:
                med = s[n // 2]
            else:
                med = 0.5 * (s[n // 2 - 1] + s[n // 2])
            d_lo = med - s[0]
            d_hi = s[n - 1] - med
            lo = 0
            hi = n - 1
            if d_hi > d_lo:
                limit = med + d_lo
                while hi > 0 and s[hi] > limit:
                    hi -= 1
            elif d_lo > d_hi:
                limit = med - d_hi
                while lo < n - 1 and s[lo] < limit:
                    lo += 1
            m = hi - lo + 1
            if m % 2 == 1:
                out[i, j] = int(s[lo + m // 2])
            else:
                out[i, j] = (int(s[lo + m // 2 - 1]) + int(s[lo + m // 2]) + 1) // 2
    return out
