"""Command-line front end.

Subcommands: gen-mask, conceal, sweep, psnr. Exit codes: 0 success,
1 runtime/data error, 2 usage error. Messages go to stderr; data goes to
files or stdout.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import metrics
from .conceal import ConcealConfig, run_concealment
from .lowpass import DEFAULT_F0, DEFAULT_GAIN
from .masks import CONSECUTIVE, DISPERSED, PatternSpec, gen_mask, loss_rate, mask_from_image, mask_to_image
from .pgm import quantize, read_pgm, write_pgm
from .weights import DEFAULT_DELTA, DEFAULT_RHO_HAT


def _parse_grid(text: str) -> list[int]:
    try:
        start, step, stop = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be start:step:stop, got {text!r}")
    if start < 1 or step < 1 or stop < start:
        raise argparse.ArgumentTypeError(f"grid {text!r} yields no ascending positive counts")
    return list(range(start, stop + 1, step))


def _add_conceal_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("-i", "--input", required=True, help="input image (binary PGM)")
    p.add_argument("-m", "--mask", required=True, help="loss mask (binary PGM, 0=lost, 255=known)")
    p.add_argument("--method", choices=("fse", "xfse"), default="xfse")
    p.add_argument("--iterations", type=int, default=200, help="basis updates per block")
    p.add_argument("--gamma", type=float, default=0.25, help="orthogonality deficiency compensation")
    p.add_argument("--rho-hat", type=float, default=DEFAULT_RHO_HAT, help="radial weight decay base")
    p.add_argument("--delta", type=float, default=DEFAULT_DELTA, help="trust factor for reconstructed samples")
    p.add_argument("--filter-g", type=float, default=DEFAULT_GAIN, help="low-pass gain factor")
    p.add_argument("--filter-f0", type=float, default=DEFAULT_F0, help="low-pass bandwidth parameter")
    p.add_argument("--block-size", type=int, default=16)
    p.add_argument("--area-size", type=int, default=48)
    p.add_argument("--no-filter", action="store_true", help="force the all-ones frequency weighting")
    p.add_argument("--threads", type=int, default=1, help="wavefront workers (result-identical to sequential)")


def _config_from(args: argparse.Namespace) -> ConcealConfig:
    return ConcealConfig(
        block_size=args.block_size,
        area_size=args.area_size,
        method=args.method,
        iterations=args.iterations,
        gamma=args.gamma,
        rho_hat=args.rho_hat,
        delta=args.delta,
        filter_gain=args.filter_g,
        filter_f0=args.filter_f0,
        no_filter=args.no_filter,
    )


def _cmd_gen_mask(args: argparse.Namespace) -> int:
    spec = PatternSpec(kind=args.pattern, block_size=args.block_size)
    mask = gen_mask(spec, args.width, args.height)
    write_pgm(mask_to_image(mask), args.output)
    print(f"loss_rate {loss_rate(mask):.4f}")
    return 0


def _cmd_conceal(args: argparse.Namespace) -> int:
    img = read_pgm(args.input)
    mask = mask_from_image(read_pgm(args.mask))
    out, rep = run_concealment(img, mask, _config_from(args), threads=args.threads)
    if rep.isolated_count:
        print(f"xfse: {rep.isolated_count} block(s) had no usable neighbours; filled with 128", file=sys.stderr)
    write_pgm(out, args.output)
    if args.reference:
        ref = read_pgm(args.reference)
        value = metrics.psnr(ref, quantize(out).astype(float))
        print(f"PSNR {_fmt_db(value)}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    img = read_pgm(args.input)
    mask = mask_from_image(read_pgm(args.mask))
    methods = ("fse", "xfse") if args.method == "both" else (args.method,)
    out = Path(args.output)
    for method in methods:
        cfg = _config_from(argparse.Namespace(**{**vars(args), "method": method}))
        records = metrics.sweep(img, mask, cfg, args.grid, threads=args.threads)
        path = out if len(methods) == 1 else out.with_name(f"{out.stem}_{method}{out.suffix}")
        with open(path, "w") as fh:
            metrics.write_sweep_csv(records, fh)
        print(f"{method} -> {path}", file=sys.stderr)
    return 0


def _cmd_psnr(args: argparse.Namespace) -> int:
    a = read_pgm(args.image_a)
    b = read_pgm(args.image_b)
    print(_fmt_db(metrics.psnr(a, b)))
    return 0


def _fmt_db(value: float) -> str:
    return "inf" if value == float("inf") else f"{value:.2f}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xfse", description="Block-loss image concealment by sparse frequency modelling")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-mask", help="generate a deterministic block-loss mask")
    p.add_argument("--pattern", required=True, choices=(DISPERSED, CONSECUTIVE))
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--block-size", type=int, default=16)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen_mask)

    p = sub.add_parser("conceal", help="reconstruct the lost blocks of an image")
    _add_conceal_args(p)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--reference", help="intact original; prints PSNR of the reconstruction")
    p.set_defaults(func=_cmd_conceal)

    p = sub.add_parser("sweep", help="PSNR / residual-energy curve over iteration budgets")
    _add_conceal_args(p)
    p.add_argument("--grid", type=_parse_grid, required=True, help="iteration budgets as start:step:stop")
    p.add_argument("-o", "--output", required=True, help="CSV path (per-method suffix when --method both)")
    p.set_defaults(func=_cmd_sweep)
    # sweep accepts --method both in addition to fse/xfse
    for action in p._actions:
        if action.dest == "method":
            action.choices = ("fse", "xfse", "both")

    p = sub.add_parser("psnr", help="PSNR between two images")
    p.add_argument("image_a")
    p.add_argument("image_b")
    p.set_defaults(func=_cmd_psnr)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"xfse: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
