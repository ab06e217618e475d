"""Quality and performance measurement: PSNR, iteration sweeps, timing."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, replace
from typing import Iterable, Sequence, TextIO

import numpy as np

from .conceal import ConcealConfig, conceal_image, run_concealment
from .pgm import quantize

__all__ = [
    "SweepRecord",
    "psnr",
    "sweep",
    "write_sweep_csv",
    "time_method",
]

SWEEP_CSV_HEADER = "iteration,psnr_db,weighted_error"


def psnr(reference: np.ndarray, test: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB over all samples of both images.

    10 * log10(255^2 / MSE) in double precision; identical images give
    +infinity.
    """
    a = np.asarray(reference, dtype=np.float64)
    b = np.asarray(test, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"image dimensions differ: {a.shape} vs {b.shape}")
    mse = float(np.mean((a - b) ** 2))
    if mse == 0.0:
        return float("inf")
    return 10.0 * np.log10(255.0 * 255.0 / mse)


@dataclass(frozen=True)
class SweepRecord:
    """PSNR and mean per-block residual energy at one iteration budget."""

    iteration: int
    psnr_db: float
    weighted_error: float


def sweep(
    img: np.ndarray,
    mask: np.ndarray,
    cfg: ConcealConfig,
    iteration_grid: Sequence[int],
    threads: int = 1,
) -> list[SweepRecord]:
    """One full concealment per grid point.

    A later grid point cannot continue an earlier run: each block's window
    depends on the final reconstructions of its raster-earlier neighbours,
    which differ per budget. img is the intact reference; samples under
    lost mask positions never influence the reconstruction. PSNR is taken
    against the 8-bit-quantized reconstruction, matching what a written
    file would contain.
    """
    grid = list(iteration_grid)
    if not grid:
        raise ValueError("iteration grid is empty")
    if any(n < 1 for n in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError(f"iteration grid must be ascending positive counts, got {grid}")
    records = []
    for n in grid:
        out, report = run_concealment(img, mask, replace(cfg, iterations=n), threads=threads)
        records.append(
            SweepRecord(
                iteration=n,
                psnr_db=psnr(img, quantize(out)),
                weighted_error=report.mean_weighted_error(),
            )
        )
    return records


def write_sweep_csv(records: Iterable[SweepRecord], fh: TextIO) -> None:
    """CSV with header iteration,psnr_db,weighted_error; inf stays literal."""
    fh.write(SWEEP_CSV_HEADER + "\n")
    for rec in records:
        fh.write(f"{rec.iteration},{rec.psnr_db!r},{rec.weighted_error!r}\n")


def time_method(
    img: np.ndarray,
    mask: np.ndarray,
    cfg: ConcealConfig,
    repeats: int = 3,
    threads: int = 1,
) -> float:
    """Median wall-clock seconds of at least three concealment runs."""
    repeats = max(int(repeats), 3)
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        conceal_image(img, mask, cfg, threads=threads)
        times.append(time.perf_counter() - start)
    return statistics.median(times)
