import numpy as np
import pytest

from at2ff import WindowView


def synthetic_natural(size=512, seed=7):
    """Piecewise-smooth grayscale image: gradients, blobs, hard edges, and
    mild texture.  Stands in for a classic natural test image when none is
    available locally."""
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64) / size
    img = 90.0 + 70.0 * xx + 40.0 * np.sin(2.0 * np.pi * 3.0 * yy)
    for _ in range(6):
        cy, cx = rng.uniform(0.1, 0.9, 2)
        r = rng.uniform(0.05, 0.25)
        d2 = (yy - cy) ** 2 + (xx - cx) ** 2
        img += rng.uniform(-60, 60) * np.exp(-d2 / (2 * r * r))
    for _ in range(4):
        y0, x0 = rng.integers(0, max(1, size - 40), 2)
        h, w = rng.integers(size // 16 + 1, size // 4 + 2, 2)
        img[y0:y0 + h, x0:x0 + w] += rng.uniform(-50, 50)
    img += rng.normal(0, 2.0, img.shape)
    return np.clip(img, 1, 254).astype(np.uint8)


def make_window(values, center_index=0, half_size=1):
    """WindowView over explicit normalized values (tests fabricate windows
    directly instead of carving them out of an image)."""
    vals = np.asarray(values, dtype=np.float64)
    return WindowView(0, 0, half_size, vals, float(vals[center_index]))


def random_window(rng, n=None, grid=True):
    """Random window of 2..25 values, by default on the 1/255 grid."""
    if n is None:
        n = int(rng.integers(2, 26))
    if grid:
        vals = rng.integers(0, 256, n) / 255.0
    else:
        vals = rng.uniform(0.0, 1.0, n)
    return make_window(vals, center_index=int(rng.integers(0, n)))


@pytest.fixture(scope="session")
def natural512():
    """A 512x512 8-bit natural test image (classic camera scene when the
    local scikit-image data is available, synthetic otherwise)."""
    try:
        from skimage import data

        img = np.asarray(data.camera())
        if img.shape == (512, 512) and img.dtype == np.uint8:
            return img
    except Exception:
        pass
    return synthetic_natural(512)
