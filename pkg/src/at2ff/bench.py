"""Seeded noise injection, PSNR scoring, and the benchmark sweep.

Corruption uses a counter-based pseudorandom stream so that a given
(image, spec) pair produces the same noisy image on any platform or
thread count: pixel ``i`` draws lanes ``2i`` (corrupt or not) and
``2i + 1`` (salt or pepper) of a splitmix64-style hash

    mix(seed + (counter + 1) * 0x9E3779B97F4A7C15)

where ``mix`` is the standard splitmix64 finalizer (xorshift-multiply
constants 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB) and the top 53 bits
become a uniform double in [0, 1).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .baselines import median_filter, truncated_median_filter
from .denoiser import DenoiseConfig, denoise_image
from .image import _require_image

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX_1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_2 = np.uint64(0x94D049BB133111EB)

CSV_HEADER = "image,filter,density_pct,seed,psnr_db,time_s"


@dataclass(frozen=True)
class NoiseSpec:
    """Parameters of one corruption pass.

    ``density`` is the per-pixel corruption probability; ``salt_ratio``
    the fraction of corrupted pixels driven to 255 (the rest go to 0).
    """

    density: float
    seed: int
    salt_ratio: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        if not 0.0 <= self.salt_ratio <= 1.0:
            raise ValueError("salt_ratio must lie in [0, 1]")


@dataclass(frozen=True)
class BenchRecord:
    """One sweep cell: a (image, density, seed, filter) measurement."""

    image: str
    filter: str
    density_pct: float
    seed: int
    psnr_db: float
    time_s: float


def _unit_stream(seed: int, counters: np.ndarray) -> np.ndarray:
    z = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + (counters + np.uint64(1)) * _GAMMA
    z = (z ^ (z >> np.uint64(30))) * _MIX_1
    z = (z ^ (z >> np.uint64(27))) * _MIX_2
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def corruption_mask(shape, spec: NoiseSpec) -> np.ndarray:
    """Boolean mask of the pixels ``inject_sap`` corrupts for ``spec``."""
    n = int(np.prod(shape))
    idx = np.arange(n, dtype=np.uint64)
    return (_unit_stream(spec.seed, idx * np.uint64(2)) < spec.density).reshape(shape)


def inject_sap(img, spec: NoiseSpec) -> np.ndarray:
    """Corrupt each pixel independently with probability ``spec.density``.

    Deterministic in (img, spec); the input is never mutated.
    """
    a = _require_image(img)
    hit = corruption_mask(a.shape, spec)
    idx = np.arange(a.size, dtype=np.uint64)
    salt = (_unit_stream(spec.seed, idx * np.uint64(2) + np.uint64(1))
            < spec.salt_ratio).reshape(a.shape)
    out = a.copy()
    out[hit & salt] = 255
    out[hit & ~salt] = 0
    return out


def psnr(reference, test) -> float:
    """Peak signal-to-noise ratio in dB for 8-bit images.

    Identical images give ``math.inf`` (zero mean squared error).
    """
    a = _require_image(reference)
    b = _require_image(test)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    diff = a.astype(np.float64) - b.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0**2 / mse)


FILTERS = {
    "at2ff": lambda img, cfg: denoise_image(img, cfg),
    "mf": lambda img, cfg: median_filter(img),
    "tmf": lambda img, cfg: truncated_median_filter(img),
    "noisy": lambda img, cfg: img,  # identity: scores the unfiltered input
}


def run_benchmark(images, densities_pct, filters, seeds,
                  cfg: DenoiseConfig | None = None,
                  salt_ratio: float = 0.5) -> list[BenchRecord]:
    """Sweep filters over corrupted copies of named images.

    ``images`` is a name -> image mapping (or an iterable of pairs).  Each
    (image, density, seed) cell is corrupted once and every filter runs on
    that same noisy image; PSNR is scored against the clean image and
    ``time_s`` covers the filter call only.  Records come back in
    deterministic (image, density, seed, filter) order.
    """
    cfg = cfg or DenoiseConfig()
    named = list(images.items()) if hasattr(images, "items") else list(images)
    densities_pct = list(densities_pct)
    filters = list(filters)
    seeds = list(seeds)
    if not named or not densities_pct or not filters or not seeds:
        raise ValueError("every sweep axis needs at least one entry")
    unknown = [f for f in filters if f not in FILTERS]
    if unknown:
        raise ValueError(f"unknown filter(s) {unknown}; available: {sorted(FILTERS)}")

    records = []
    for name, img in named:
        clean = _require_image(img)
        for pct in densities_pct:
            for seed in seeds:
                noisy = inject_sap(clean, NoiseSpec(pct / 100.0, seed, salt_ratio))
                for fname in filters:
                    run = FILTERS[fname]
                    start = time.perf_counter()
                    out = run(noisy, cfg)
                    elapsed = time.perf_counter() - start
                    records.append(BenchRecord(
                        image=str(name),
                        filter=fname,
                        density_pct=float(pct),
                        seed=int(seed),
                        psnr_db=psnr(clean, out),
                        time_s=elapsed,
                    ))
    return records


def to_csv(records) -> str:
    """Render records as CSV: 2 decimals for psnr_db (``inf`` when exact),
    3 for time_s, '\\n' line endings."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.image},{r.filter},{r.density_pct:g},{r.seed},"
            f"{r.psnr_db:.2f},{r.time_s:.3f}"
        )
    return "\n".join(lines) + "\n"
