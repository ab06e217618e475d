"""Whole-image concealment driver.

Lost blocks are processed in raster order. For each one, a square window
centred on the block is cut out of the working image, classified per
sample (known / excluded / previously reconstructed), weighted, and
modelled; the model values replace the lost samples and are immediately
promoted to the partially-trusted reconstructed state for all later
blocks. Samples outside the image border are excluded via zero weight, so
no padding is ever fabricated.

Optional threading processes wavefronts of blocks whose windows cannot
interact; the result is bit-identical to the sequential raster scan.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DegenerateAreaError,
    ExtrapolationArea,
    ExtrapolationResult,
    IterationConfig,
    run_extrapolation,
)
from .lowpass import DEFAULT_F0, DEFAULT_GAIN, FilterResponse, build_filter, unit_filter
from .masks import LOST, RECONSTRUCTED
from .weights import DEFAULT_DELTA, DEFAULT_RHO_HAT, build_weights

__all__ = [
    "ConcealConfig",
    "BlockReport",
    "ConcealReport",
    "assemble_area",
    "conceal_image",
    "run_concealment",
]

# Value written into blocks whose whole window carries no information.
ISOLATED_FILL = 128.0

METHODS = ("fse", "xfse")


@dataclass(frozen=True)
class ConcealConfig:
    """Parameters of a concealment run.

    method "fse" is the plain frequency-selective method; "xfse" weights
    the residual spectrum with the natural-image low-pass before every
    selection and projection. no_filter forces the all-ones response
    regardless of method (xfse with no_filter reproduces fse exactly).
    """

    block_size: int = 16
    area_size: int = 48
    method: str = "fse"
    iterations: int = 200
    gamma: float = 0.25
    rho_hat: float = DEFAULT_RHO_HAT
    delta: float = DEFAULT_DELTA
    filter_gain: float = DEFAULT_GAIN
    filter_f0: float = DEFAULT_F0
    gamma_on_residual: bool = True
    pair_conjugate: bool = True
    no_filter: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.block_size < 1:
            raise ValueError(f"block_size must be positive, got {self.block_size}")
        if self.area_size <= self.block_size:
            raise ValueError(f"area_size {self.area_size} must exceed block_size {self.block_size}")
        if (self.area_size - self.block_size) % 2:
            raise ValueError("area_size - block_size must be even so the block sits centred")

    def make_filter(self) -> FilterResponse:
        if self.method == "fse" or self.no_filter:
            return unit_filter(self.area_size, self.area_size)
        return build_filter(self.area_size, self.area_size, self.filter_gain, self.filter_f0)


@dataclass
class BlockReport:
    """Per-block diagnostics from one concealment pass."""

    origin: tuple[int, int]
    iterations: int
    final_error: float
    imag_residue: float
    isolated: bool = False


@dataclass
class ConcealReport:
    blocks: list[BlockReport] = field(default_factory=list)

    @property
    def isolated_count(self) -> int:
        return sum(1 for b in self.blocks if b.isolated)

    def mean_weighted_error(self) -> float:
        errors = [b.final_error for b in self.blocks if not b.isolated]
        return float(np.mean(errors)) if errors else 0.0


def assemble_area(
    img: np.ndarray,
    mask: np.ndarray,
    block_origin: tuple[int, int],
    cfg: ConcealConfig,
) -> ExtrapolationArea:
    """Cut the window centred on the block at block_origin (row, col).

    Per-sample classes come from the mask; positions outside the image are
    excluded (zero weight) with signal 0.
    """
    area = cfg.area_size
    margin = (area - cfg.block_size) // 2
    top = block_origin[0] - margin
    left = block_origin[1] - margin
    rows, cols = img.shape
    signal = np.zeros((area, area), dtype=np.float64)
    area_class = np.full((area, area), LOST, dtype=np.uint8)
    r0, r1 = max(top, 0), min(top + area, rows)
    c0, c1 = max(left, 0), min(left + area, cols)
    if r0 < r1 and c0 < c1:
        wr0, wc0 = r0 - top, c0 - left
        signal[wr0 : wr0 + (r1 - r0), wc0 : wc0 + (c1 - c0)] = img[r0:r1, c0:c1]
        area_class[wr0 : wr0 + (r1 - r0), wc0 : wc0 + (c1 - c0)] = mask[r0:r1, c0:c1]
    weights = build_weights(area_class, cfg.rho_hat, cfg.delta)
    return ExtrapolationArea(
        signal=signal,
        area_class=area_class,
        weights=weights,
        block_rect=(margin, margin, cfg.block_size, cfg.block_size),
    )


def _lost_block_origins(mask: np.ndarray, block_size: int) -> list[tuple[int, int]]:
    """Raster-ordered origins of aligned blocks containing lost samples."""
    rows, cols = mask.shape
    origins = []
    for i in range(rows // block_size):
        for j in range(cols // block_size):
            tile = mask[i * block_size : (i + 1) * block_size, j * block_size : (j + 1) * block_size]
            if np.any(tile == LOST):
                origins.append((i * block_size, j * block_size))
    return origins


def _conceal_block(
    working: np.ndarray,
    mask: np.ndarray,
    origin: tuple[int, int],
    cfg: ConcealConfig,
    itercfg: IterationConfig,
    backend: str | None,
) -> tuple[ExtrapolationResult | None, ExtrapolationArea]:
    area = assemble_area(working, mask, origin, cfg)
    try:
        return run_extrapolation(area, itercfg, backend=backend), area
    except DegenerateAreaError:
        return None, area


def _write_back(
    working: np.ndarray,
    mask: np.ndarray,
    origin: tuple[int, int],
    result: ExtrapolationResult | None,
    area: ExtrapolationArea,
    report: ConcealReport,
) -> None:
    r, c, h, w = area.block_rect
    br, bc = origin
    tile_mask = mask[br : br + h, bc : bc + w]
    lost = tile_mask == LOST
    if result is None:
        working[br : br + h, bc : bc + w][lost] = ISOLATED_FILL
        report.blocks.append(BlockReport(origin=origin, iterations=0, final_error=0.0, imag_residue=0.0, isolated=True))
    else:
        working[br : br + h, bc : bc + w][lost] = result.model[r : r + h, c : c + w][lost]
        report.blocks.append(
            BlockReport(
                origin=origin,
                iterations=result.iterations,
                final_error=result.final_error,
                imag_residue=result.imag_residue,
            )
        )
    tile_mask[lost] = RECONSTRUCTED


def run_concealment(
    img: np.ndarray,
    mask: np.ndarray,
    cfg: ConcealConfig,
    threads: int = 1,
    backend: str | None = None,
) -> tuple[np.ndarray, ConcealReport]:
    """Conceal every lost block; returns (image, per-block report).

    Known samples are returned untouched; originally lost samples carry
    their model values clamped to [0, 255]. Internally the unclamped
    models feed later blocks. Blocks whose window holds no information are
    filled with the neutral mid-gray and flagged in the report.
    """
    img = np.asarray(img, dtype=np.float64)
    mask = np.asarray(mask)
    if img.shape != mask.shape:
        raise ValueError(f"image {img.shape} and mask {mask.shape} dimensions differ")
    origins = _lost_block_origins(mask, cfg.block_size)
    if not origins:
        raise ValueError("mask contains no lost blocks")
    lost_positions = mask == LOST
    full_rows = (img.shape[0] // cfg.block_size) * cfg.block_size
    full_cols = (img.shape[1] // cfg.block_size) * cfg.block_size
    if np.any(lost_positions[full_rows:, :]) or np.any(lost_positions[:, full_cols:]):
        raise ValueError("lost samples in partial border blocks cannot be concealed")
    working = img.copy()
    wmask = mask.copy()
    itercfg = IterationConfig(
        max_iterations=cfg.iterations,
        filter=cfg.make_filter(),
        gamma=cfg.gamma,
        gamma_on_residual=cfg.gamma_on_residual,
        pair_conjugate=cfg.pair_conjugate,
    )
    report = ConcealReport()
    if threads <= 1:
        for origin in origins:
            result, area = _conceal_block(working, wmask, origin, cfg, itercfg, backend)
            _write_back(working, wmask, origin, result, area, report)
    else:
        _run_wavefronts(working, wmask, origins, cfg, itercfg, report, threads, backend)
    out = working.copy()
    out[lost_positions] = np.clip(out[lost_positions], 0.0, 255.0)
    return out, report


def conceal_image(
    img: np.ndarray,
    mask: np.ndarray,
    cfg: ConcealConfig,
    threads: int = 1,
    backend: str | None = None,
) -> np.ndarray:
    """run_concealment without the report."""
    out, _ = run_concealment(img, mask, cfg, threads=threads, backend=backend)
    return out


def _run_wavefronts(working, wmask, origins, cfg, itercfg, report, threads, backend) -> None:
    """Process blocks in groups that preserve the sequential result.

    A block's window spans the blocks within Chebyshev radius
    R = ceil(margin / block_size), so block (i, j) must run after its
    raster-earlier neighbours in that radius and before its raster-later
    ones. Scheduling by t = (R+1)*i + j satisfies both orders, and blocks
    sharing a t are at least R+1 block-columns apart, so neither's window
    reaches the other's rectangle.
    """
    bs = cfg.block_size
    margin = (cfg.area_size - bs) // 2
    stride = (margin + bs - 1) // bs + 1
    waves: dict[int, list[tuple[int, int]]] = {}
    for br, bc in origins:
        waves.setdefault(stride * (br // bs) + bc // bs, []).append((br, bc))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for t in sorted(waves):
            group = waves[t]
            futures = [pool.submit(_conceal_block, working, wmask, origin, cfg, itercfg, backend) for origin in group]
            for origin, fut in zip(group, futures):
                result, area = fut.result()
                _write_back(working, wmask, origin, result, area, report)
