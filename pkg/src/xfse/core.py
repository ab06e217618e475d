"""Sparse frequency-domain modelling of one extrapolation window.

The model is a weighted superposition of 2D Fourier basis functions,
built greedily: each iteration picks the basis function whose weighted
projection removes the most weighted residual energy, adds a compensated
fraction gamma of that projection to the model, and updates the weighted
residual spectrum in place. Everything runs in the frequency domain:

    dc(k,l)  = M*N * Rw(k,l) * H(k,l) / W(0,0)
    dE(k,l)  = |Rw(k,l) * H(k,l)|^2 / W(0,0)
    Rw(k,l) -= step/(M*N) * W(k-u, l-v)        (circular shift)

where Rw is the DFT of the spatially weighted residual, W the DFT of the
weight grid, and H a real even frequency weighting (all-ones for the
plain method). Forward DFTs are unnormalized; the inverse carries 1/(MN),
so the synthesized model is simply the inverse DFT of the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .lowpass import FilterResponse, folded_freq
from .weights import weight_spectrum

__all__ = [
    "DegenerateAreaError",
    "ExtrapolationArea",
    "SpectralModel",
    "IterationConfig",
    "ExtrapolationResult",
    "init_model",
    "select_basis",
    "project_coefficient",
    "update_model",
    "weighted_error",
    "run_extrapolation",
    "make_area",
]

# Early exit once the best achievable energy decrease falls below this
# fraction of the initial weighted residual energy.
REL_DE_FLOOR = 1e-12

# Weights below this fraction of the grid maximum are treated as zero
# support when recovering the spatial residual (guards fp-noise blowup).
_W_SUPPORT_FLOOR = 1e-12


class DegenerateAreaError(ValueError):
    """Window contains no usable samples (all weights zero)."""


@dataclass
class ExtrapolationArea:
    """One M x N window around a lost block.

    signal holds the local luminance (arbitrary values at excluded
    positions; they carry zero weight), area_class the per-sample state in
    the masks.py vocabulary (KNOWN = support, LOST = excluded,
    RECONSTRUCTED = partially trusted), weights the matching weight grid,
    and block_rect = (row, col, height, width) the centred region whose
    samples are written back, in window coordinates.
    """

    signal: np.ndarray
    area_class: np.ndarray
    weights: np.ndarray
    block_rect: tuple[int, int, int, int]

    def __post_init__(self):
        if self.signal.shape != self.area_class.shape or self.signal.shape != self.weights.shape:
            raise ValueError("signal, area_class and weights must share one shape")
        r, c, h, w = self.block_rect
        rows, cols = self.signal.shape
        if (rows - h) % 2 or (cols - w) % 2 or r != (rows - h) // 2 or c != (cols - w) // 2:
            raise ValueError(f"block_rect {self.block_rect} is not centred in {rows}x{cols}")


@dataclass
class SpectralModel:
    """Evolving model state: coefficients c, weighted residual spectrum Rw."""

    c: np.ndarray
    Rw: np.ndarray
    iteration: int = 0


@dataclass
class IterationConfig:
    """Iteration policy for one window.

    gamma compensates the orthogonality deficiency of the weighted basis;
    by default it scales both the model and the residual update
    (gamma_on_residual), which keeps the residual accounting consistent
    with the model and the weighted error non-increasing. pair_conjugate
    updates the conjugate partner of each selected bin in the same step so
    the coefficient grid stays conjugate symmetric and the model exactly
    real; a pair counts as two iterations.
    """

    max_iterations: int
    filter: FilterResponse
    gamma: float = 0.25
    gamma_on_residual: bool = True
    pair_conjugate: bool = True

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in (0, 1], got {self.gamma}")


@dataclass
class ExtrapolationResult:
    """Synthesized model plus per-window diagnostics."""

    model: np.ndarray
    iterations: int
    final_error: float
    imag_residue: float


def init_model(area: ExtrapolationArea, Wspec: np.ndarray) -> SpectralModel:
    """Start a model: zero coefficients, Rw = DFT of (weights * signal)."""
    w00 = Wspec[0, 0].real
    if w00 <= 0.0:
        raise DegenerateAreaError("window has no usable samples (sum of weights is zero)")
    rw = np.fft.fft2(area.weights * area.signal)
    c = np.zeros_like(rw)
    return SpectralModel(c=c, Rw=rw, iteration=0)


def select_basis(model: SpectralModel, filt: FilterResponse, w00: float) -> tuple[int, int, float]:
    """Best basis-function indices and their achievable energy decrease.

    Near-equal metric values (relative band kernels.TIE_TOL) are resolved
    towards the lowest folded radial frequency, then row-major order.
    """
    M, N = model.Rw.shape
    fold2 = _fold2_grid(M, N)
    u, v, metric = kernels.argmax_bin(model.Rw, filt.H * filt.H, fold2)
    return u, v, metric / w00


def project_coefficient(model: SpectralModel, u: int, v: int, filt: FilterResponse, w00: float) -> complex:
    """Weighted projection coefficient of the residual on basis (u, v)."""
    M, N = model.Rw.shape
    return complex((M * N * filt.H[u, v] / w00) * model.Rw[u, v])


def update_model(
    model: SpectralModel,
    u: int,
    v: int,
    dc: complex,
    gamma: float,
    Wspec: np.ndarray,
    gamma_on_residual: bool = True,
) -> SpectralModel:
    """Apply one basis update in place and advance the iteration counter.

    The model always receives gamma * dc. The residual spectrum loses the
    spectrum of the same scaled basis term; with gamma_on_residual False it
    loses the full (uncompensated) term instead, which makes the residual
    accounting diverge from the model for gamma < 1.
    """
    M, N = model.Rw.shape
    model.c[u, v] += gamma * dc
    step = gamma * dc if gamma_on_residual else dc
    model.Rw -= (step / (M * N)) * np.roll(Wspec, (u, v), axis=(0, 1))
    model.iteration += 1
    return model


def weighted_error(model: SpectralModel, weights: np.ndarray) -> float:
    """Current weighted residual energy sum(w * |r|^2).

    Rw is the transform of w * r, so w * r is recovered by the inverse
    transform and divided by w pointwise; positions with (numerically)
    zero weight contribute nothing.
    """
    wr = np.fft.ifft2(model.Rw)
    support = weights > weights.max() * _W_SUPPORT_FLOOR if weights.size else weights > 0
    wr_s = wr[support]
    return float(np.sum((wr_s.real * wr_s.real + wr_s.imag * wr_s.imag) / weights[support]))


def run_extrapolation(
    area: ExtrapolationArea,
    cfg: IterationConfig,
    backend: str | None = None,
) -> ExtrapolationResult:
    """Run the full iteration for one window and synthesize the model.

    Exits early when the best achievable decrease falls below
    REL_DE_FLOOR times the initial weighted residual energy. The model is
    the real part of the inverse DFT of the coefficients; the relative
    magnitude of the discarded imaginary part is reported as imag_residue
    (it sits at fp-noise level when pair_conjugate is on).
    """
    M, N = area.signal.shape
    if (cfg.filter.rows, cfg.filter.cols) != (M, N):
        raise ValueError(f"filter grid {cfg.filter.rows}x{cfg.filter.cols} does not match window {M}x{N}")
    Wspec = weight_spectrum(area.weights)
    model = init_model(area, Wspec)
    w00 = Wspec[0, 0].real
    e0 = float(np.sum(area.weights * area.signal * area.signal))
    iterations = kernels.iterate(
        model.Rw,
        model.c,
        Wspec,
        cfg.filter.H,
        _fold2_grid(M, N),
        cfg.gamma,
        cfg.max_iterations,
        w00,
        REL_DE_FLOOR * e0,
        cfg.pair_conjugate,
        cfg.gamma_on_residual,
        backend=backend,
    )
    model.iteration = iterations
    g = np.fft.ifft2(model.c)
    peak = float(np.abs(g.real).max())
    residue = float(np.abs(g.imag).max()) / peak if peak > 0 else 0.0
    return ExtrapolationResult(
        model=np.ascontiguousarray(g.real),
        iterations=iterations,
        final_error=weighted_error(model, area.weights),
        imag_residue=residue,
    )


def make_area(
    signal: np.ndarray,
    area_class: np.ndarray,
    weights: np.ndarray,
    block_size: int | None = None,
) -> ExtrapolationArea:
    """Convenience constructor; block_rect is the centred block_size square
    (the whole window when block_size is omitted)."""
    signal = np.ascontiguousarray(signal, dtype=np.float64)
    rows, cols = signal.shape
    if block_size is None:
        rect = (0, 0, rows, cols)
    else:
        rect = ((rows - block_size) // 2, (cols - block_size) // 2, block_size, block_size)
    return ExtrapolationArea(
        signal=signal,
        area_class=np.asarray(area_class, dtype=np.uint8),
        weights=np.ascontiguousarray(weights, dtype=np.float64),
        block_rect=rect,
    )


_fold2_cache: dict[tuple[int, int], np.ndarray] = {}


def _fold2_grid(M: int, N: int) -> np.ndarray:
    """Squared folded radial frequency per bin, cached per grid size."""
    key = (M, N)
    got = _fold2_cache.get(key)
    if got is None:
        fk = folded_freq(M)[:, None]
        fl = folded_freq(N)[None, :]
        got = np.ascontiguousarray(fk * fk + fl * fl)
        _fold2_cache[key] = got
    return got
