"""Salt-and-pepper denoising with an adaptive type-2 fuzzy filter.

The package covers the full desk-scale pipeline: PGM I/O, seeded noise
injection, the adaptive filter itself, classical median baselines, PSNR
scoring, and a benchmark sweep that writes CSV.
"""

from .baselines import median_filter, truncated_median_filter
from .bench import (
    CSV_HEADER,
    FILTERS,
    BenchRecord,
    NoiseSpec,
    corruption_mask,
    inject_sap,
    psnr,
    run_benchmark,
    to_csv,
)
from .denoiser import (
    DenoiseConfig,
    GoodStats,
    blend,
    denoise_image,
    denoise_pixel,
    estimate_noise_density,
    good_pixels,
    good_stats,
    initial_half_size,
    weighted_mean,
    weights,
)
from .detector import (
    MembershipMatrix,
    Thresholds,
    Type2Params,
    detector_params,
    fuzzy_flag,
    gmf,
    m_ald,
    mean_of_k_middle,
    membership_matrix,
    thresholds,
    umf_lmf,
)
from .image import (
    PgmError,
    WindowView,
    decode_pgm,
    denormalize,
    encode_pgm,
    normalize,
    read_pgm,
    window,
    write_pgm,
)

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "CSV_HEADER",
    "DenoiseConfig",
    "FILTERS",
    "GoodStats",
    "MembershipMatrix",
    "NoiseSpec",
    "PgmError",
    "Thresholds",
    "Type2Params",
    "WindowView",
    "blend",
    "corruption_mask",
    "decode_pgm",
    "denoise_image",
    "denoise_pixel",
    "denormalize",
    "detector_params",
    "encode_pgm",
    "estimate_noise_density",
    "fuzzy_flag",
    "gmf",
    "good_pixels",
    "good_stats",
    "initial_half_size",
    "inject_sap",
    "m_ald",
    "mean_of_k_middle",
    "median_filter",
    "membership_matrix",
    "normalize",
    "psnr",
    "read_pgm",
    "run_benchmark",
    "thresholds",
    "to_csv",
    "truncated_median_filter",
    "umf_lmf",
    "weighted_mean",
    "weights",
    "window",
    "write_pgm",
    "__version__",
]
