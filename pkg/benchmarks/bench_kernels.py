"""Benchmark the numba kernel against the pure-numpy fallback.

Times the fused per-window iteration on a realistic 48x48 window and a
full 512x512 concealment with the dispersed loss pattern. Select the
backend under test globally with XFSE_BACKEND; this script times both
explicitly.

Run:  python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import statistics
import time

import numpy as np

from xfse.conceal import ConcealConfig, conceal_image
from xfse.core import IterationConfig, make_area, run_extrapolation
from xfse.kernels import available_backends
from xfse.lowpass import build_filter
from xfse.masks import KNOWN, LOST, PatternSpec, gen_mask
from xfse.sampledata import natural_image
from xfse.weights import build_weights


def window_instance():
    img = natural_image("camera")
    patch = img[128:176, 128:176]
    cls = np.full((48, 48), KNOWN, dtype=np.uint8)
    cls[16:32, 16:32] = LOST
    w = build_weights(cls)
    return make_area(patch, cls, w, block_size=16)


def time_call(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="fewer repeats and iterations")
    args = parser.parse_args()
    repeats = 3 if args.quick else 7
    budgets = (100, 400) if args.quick else (100, 400, 1500)

    area = window_instance()
    filt = build_filter(48, 48)
    backends = available_backends()

    print(f"backends: {', '.join(backends)}")
    print()
    print("single 48x48 window (median of %d runs)" % repeats)
    print(f"{'iterations':>10} " + " ".join(f"{b:>12}" for b in backends) + f" {'speedup':>9}")
    for n in budgets:
        cfg = IterationConfig(max_iterations=n, filter=filt)
        row = {}
        for backend in backends:
            run_extrapolation(area, cfg, backend=backend)  # warm up / compile
            row[backend] = time_call(lambda: run_extrapolation(area, cfg, backend=backend), repeats)
        cells = " ".join(f"{row[b] * 1e3:>10.2f}ms" for b in backends)
        speedup = row["numpy"] / row["numba"] if "numba" in row else float("nan")
        print(f"{n:>10} {cells} {speedup:>8.1f}x")

    print()
    img = natural_image("camera")
    mask = gen_mask(PatternSpec("dispersed"), 512, 512)
    iters = 100 if args.quick else 300
    cfg = ConcealConfig(method="xfse", iterations=iters)
    print(f"full 512x512 dispersed concealment, {iters} iterations/block")
    full = {}
    for backend in backends:
        conceal_image(img, mask, cfg, backend=backend)
        full[backend] = time_call(lambda: conceal_image(img, mask, cfg, backend=backend), max(3, repeats // 2))
        print(f"  {backend:>6}: {full[backend]:.2f}s")
    if "numba" in full:
        print(f"  speedup: {full['numpy'] / full['numba']:.1f}x")


if __name__ == "__main__":
    main()
