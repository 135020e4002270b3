"""Grayscale pixel grids, the PGM codec, and intensity normalization.

Images are plain 2-D ``numpy.uint8`` arrays of shape ``(height, width)``.
All filtering math in this package runs on intensities normalized to
[0, 1], so the salt-and-pepper extremes are exactly 0.0 and 1.0;
:func:`normalize` and :func:`denormalize` are the only conversion points.
"""

from __future__ import annotations

import os
import tempfile
from typing import NamedTuple

import numpy as np

_WHITESPACE = b" \t\n\r\x0b\x0c"


class PgmError(ValueError):
    """A PGM byte stream that cannot be decoded (bad header or payload)."""


class WindowView(NamedTuple):
    """The in-bounds neighborhood of one pixel, in normalized intensities.

    ``values`` holds the window pixels row-major.  Windows at the image
    border are truncated to their in-bounds part (no padding), so
    ``1 <= len(values) <= (2F+1)**2`` with equality on the right for
    fully interior windows.  ``center`` is the processed pixel's own
    normalized value and always appears in ``values``.
    """

    row: int
    col: int
    half_size: int
    values: np.ndarray
    center: float


def _require_image(img) -> np.ndarray:
    a = np.asarray(img)
    if a.ndim != 2 or a.size == 0:
        raise ValueError("expected a non-empty 2-D grayscale array")
    if a.dtype != np.uint8:
        if not np.issubdtype(a.dtype, np.integer):
            raise ValueError("expected integer pixel values in [0, 255]")
        if a.min() < 0 or a.max() > 255:
            raise ValueError("pixel values outside [0, 255]")
        a = a.astype(np.uint8)
    return a


def decode_pgm(data: bytes) -> np.ndarray:
    """Decode a binary (P5) or ASCII (P2) PGM byte stream.

    Header whitespace and ``#`` comments are tolerated per the Netpbm
    convention.  Only 8-bit images (maxval <= 255) are supported; sample
    values are taken verbatim, never rescaled.

    Raises :class:`PgmError` with a distinct message for a malformed
    header, an unsupported maxval, or a truncated payload.
    """
    data = bytes(data)
    pos = 0

    def next_token(what="header"):
        nonlocal pos
        n = len(data)
        while pos < n:
            c = data[pos]
            if c == 0x23:  # '#' comment runs to end of line
                nl = data.find(b"\n", pos)
                pos = n if nl < 0 else nl + 1
            elif c in _WHITESPACE:
                pos += 1
            else:
                break
        if pos >= n:
            raise PgmError(f"malformed {what}: unexpected end of data")
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != 0x23:
            pos += 1
        return data[start:pos]

    magic = next_token()
    if magic not in (b"P5", b"P2"):
        raise PgmError(f"malformed header: expected magic 'P5' or 'P2', got {magic!r}")
    try:
        width = int(next_token())
        height = int(next_token())
        maxval = int(next_token())
    except ValueError:
        raise PgmError("malformed header: width/height/maxval must be integers") from None
    if width <= 0 or height <= 0:
        raise PgmError(f"malformed header: dimensions {width}x{height} must be positive")
    if maxval <= 0:
        raise PgmError(f"malformed header: maxval {maxval} must be positive")
    if maxval > 255:
        raise PgmError(f"unsupported maxval {maxval}: only 8-bit images are handled")

    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        if pos >= len(data) or data[pos] not in _WHITESPACE:
            raise PgmError("malformed header: missing whitespace before binary payload")
        pos += 1
        payload = data[pos:pos + count]
        if len(payload) < count:
            raise PgmError(f"truncated payload: expected {count} bytes, got {len(payload)}")
        pixels = np.frombuffer(payload, dtype=np.uint8, count=count)
    else:
        rest = data[pos:]
        if b"#" in rest:
            rest = b"\n".join(line.split(b"#", 1)[0] for line in rest.splitlines())
        fields = rest.split()
        if len(fields) < count:
            raise PgmError(f"truncated payload: expected {count} samples, got {len(fields)}")
        try:
            samples = [int(f) for f in fields[:count]]
        except ValueError:
            raise PgmError("malformed payload: non-numeric sample") from None
        if min(samples) < 0 or max(samples) > 255:
            raise PgmError("malformed payload: sample outside [0, 255]")
        pixels = np.array(samples, dtype=np.uint8)
    return pixels.reshape(height, width).copy()


def encode_pgm(img) -> bytes:
    """Encode an image as binary P5 with maxval 255 and '\\n' separators.

    ``decode_pgm(encode_pgm(img))`` reproduces ``img`` bit-exactly.
    """
    a = _require_image(img)
    height, width = a.shape
    return b"P5\n%d %d\n255\n" % (width, height) + a.tobytes()


def read_pgm(path) -> np.ndarray:
    with open(path, "rb") as f:
        return decode_pgm(f.read())


def write_pgm(path, img) -> None:
    """Write ``img`` as P5, atomically (no partial file on failure)."""
    _atomic_write(path, encode_pgm(img))


def _atomic_write(path, data: bytes) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def normalize(raw):
    """Map raw 8-bit intensities to [0, 1] (exact division by 255).

    Accepts scalars or arrays; always returns float64.
    """
    out = np.asarray(raw, dtype=np.float64) / 255.0
    return float(out) if out.ndim == 0 else out


def denormalize(x):
    """Inverse of :func:`normalize`: scale by 255, round half away from
    zero, clamp to [0, 255]."""
    out = np.clip(np.floor(np.asarray(x, dtype=np.float64) * 255.0 + 0.5), 0, 255)
    return int(out) if out.ndim == 0 else out.astype(np.uint8)


def window(img, row: int, col: int, half_size: int = 1) -> WindowView:
    """Extract the truncated (2F+1)x(2F+1) neighborhood around a pixel."""
    a = _require_image(img)
    height, width = a.shape
    if not (0 <= row < height and 0 <= col < width):
        raise IndexError(f"pixel ({row}, {col}) outside {height}x{width} image")
    if half_size < 1:
        raise ValueError("half_size must be >= 1")
    f = int(half_size)
    patch = a[max(0, row - f):min(height, row + f + 1),
              max(0, col - f):min(width, col + f + 1)]
    values = patch.astype(np.float64).ravel() / 255.0
    return WindowView(row, col, f, values, float(a[row, col]) / 255.0)
