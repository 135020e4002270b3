"""Command line front end: add-noise, denoise, psnr, and bench.

Exit codes: 0 on success, 1 for flag or value validation errors, 2 for
I/O errors (unreadable files, malformed PGM data).  Output files are
written atomically, so a failing run never leaves a partial file behind.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .bench import (
    FILTERS,
    NoiseSpec,
    corruption_mask,
    inject_sap,
    psnr,
    run_benchmark,
    to_csv,
)
from .denoiser import DenoiseConfig
from .image import PgmError, _atomic_write, read_pgm, write_pgm

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse's default error() exits with status 2; route everything
    # through one path so malformed flags always exit 1 with usage text.
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _add_denoise_flags(p):
    p.add_argument("--epsilon", type=float, default=1.2,
                   help="deviation multiplier, must exceed 1 (default 1.2)")
    p.add_argument("--f-init", default="auto", choices=["auto", "1", "2"],
                   help="initial half-window (default auto)")
    p.add_argument("--f-max", type=int, default=5,
                   help="maximum half-window (default 5)")
    p.add_argument("--tau-hom", type=float, default=1.0 / 255.0,
                   help="homogeneity tolerance in [0,1] units (default 1/255)")


def _config_from(args) -> DenoiseConfig:
    f_init = args.f_init if args.f_init == "auto" else int(args.f_init)
    return DenoiseConfig(epsilon=args.epsilon, f_init=f_init,
                         f_max=args.f_max, tau_hom=args.tau_hom)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="at2ff",
                     description="Salt-and-pepper denoising toolkit (PGM images)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("add-noise", help="corrupt a PGM with salt-and-pepper noise")
    p.add_argument("in_path")
    p.add_argument("out_path")
    p.add_argument("--density", type=float, required=True,
                   help="per-pixel corruption probability in [0, 1]")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--salt-ratio", type=float, default=0.5,
                   help="fraction of corrupted pixels set to 255 (default 0.5)")
    p.set_defaults(run=_cmd_add_noise)

    p = sub.add_parser("denoise", help="filter a PGM image")
    p.add_argument("in_path")
    p.add_argument("out_path")
    p.add_argument("--filter", default="at2ff", choices=["at2ff", "mf", "tmf"])
    _add_denoise_flags(p)
    p.set_defaults(run=_cmd_denoise)

    p = sub.add_parser("psnr", help="PSNR of a test image against a reference")
    p.add_argument("ref_path")
    p.add_argument("test_path")
    p.set_defaults(run=_cmd_psnr)

    p = sub.add_parser("bench", help="noise/filter sweep over a directory of PGMs")
    p.add_argument("--images", required=True, help="directory of .pgm inputs")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--densities", default="10,30,50,70,90",
                   help="comma list of noise percentages (default 10,30,50,70,90)")
    p.add_argument("--filters", default="at2ff,mf,tmf",
                   help=f"comma list from {sorted(FILTERS)} (default at2ff,mf,tmf)")
    p.add_argument("--seeds", default="1..3",
                   help="comma list and/or inclusive a..b ranges (default 1..3)")
    p.add_argument("--salt-ratio", type=float, default=0.5)
    _add_denoise_flags(p)
    p.set_defaults(run=_cmd_bench)

    return parser


def _cmd_add_noise(args) -> int:
    spec = NoiseSpec(args.density, args.seed, args.salt_ratio)
    img = read_pgm(args.in_path)
    noisy = inject_sap(img, spec)
    write_pgm(args.out_path, noisy)
    print(f"{corruption_mask(img.shape, spec).mean():.6f}")
    return EXIT_OK


def _cmd_denoise(args) -> int:
    cfg = _config_from(args)
    img = read_pgm(args.in_path)
    run = FILTERS[args.filter]
    start = time.perf_counter()
    out = run(img, cfg)
    elapsed = time.perf_counter() - start
    write_pgm(args.out_path, out)
    print(f"{elapsed:.3f}")
    return EXIT_OK


def _cmd_psnr(args) -> int:
    value = psnr(read_pgm(args.ref_path), read_pgm(args.test_path))
    print(f"{value:.2f}")
    return EXIT_OK


def _parse_seeds(text: str) -> list[int]:
    seeds = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ".." in token:
            first, _, last = token.partition("..")
            try:
                lo, hi = int(first), int(last)
            except ValueError:
                raise ValueError(f"bad seed range {token!r}") from None
            if hi < lo:
                raise ValueError(f"bad seed range {token!r}: end before start")
            seeds.extend(range(lo, hi + 1))
        else:
            try:
                seeds.append(int(token))
            except ValueError:
                raise ValueError(f"bad seed {token!r}") from None
    if not seeds:
        raise ValueError("no seeds given")
    return seeds


def _parse_densities(text: str) -> list[float]:
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            pct = float(token)
        except ValueError:
            raise ValueError(f"bad density {token!r}") from None
        if not 0.0 <= pct <= 100.0:
            raise ValueError(f"density {pct:g} outside [0, 100]")
        out.append(pct)
    if not out:
        raise ValueError("no densities given")
    return out


def _cmd_bench(args) -> int:
    cfg = _config_from(args)
    densities = _parse_densities(args.densities)
    seeds = _parse_seeds(args.seeds)
    filters = [t.strip() for t in args.filters.split(",") if t.strip()]
    if not filters:
        raise ValueError("no filters given")
    unknown = [f for f in filters if f not in FILTERS]
    if unknown:
        raise ValueError(f"unknown filter(s) {unknown}; available: {sorted(FILTERS)}")
    if not 0.0 <= args.salt_ratio <= 1.0:
        raise ValueError("salt-ratio must lie in [0, 1]")

    directory = Path(args.images)
    if not directory.is_dir():
        raise FileNotFoundError(f"image directory not found: {directory}")
    images = {}
    for path in sorted(directory.iterdir()):
        if path.suffix.lower() != ".pgm":
            continue
        try:
            images[path.stem] = read_pgm(path)
        except (PgmError, OSError) as exc:
            print(f"warning: skipping {path}: {exc}", file=sys.stderr)
    if not images:
        raise FileNotFoundError(f"no readable PGM images in {directory}")

    records = run_benchmark(images, densities, filters, seeds,
                            cfg=cfg, salt_ratio=args.salt_ratio)
    _atomic_write(args.out, to_csv(records).encode("utf-8"))

    print(f"{'filter':<8} {'density_pct':>11} {'mean_psnr_db':>12}")
    for fname in filters:
        for pct in densities:
            scores = [r.psnr_db for r in records
                      if r.filter == fname and r.density_pct == pct]
            mean = sum(scores) / len(scores)
            print(f"{fname:<8} {pct:>11g} {mean:>12.2f}")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.run(args)
    except PgmError as exc:
        print(f"at2ff: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"at2ff: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"at2ff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
