"""Block-loss image error concealment by frequency-selective extrapolation.

Lost image blocks are reconstructed from a sparse model of 2D Fourier
basis functions fitted greedily to the weighted surrounding samples. The
filtered variant additionally weights the residual spectrum with an
isotropic natural-image low-pass before every selection, which suppresses
spurious high-frequency components and improves reconstruction quality.
"""

from .conceal import ConcealConfig, assemble_area, conceal_image, run_concealment
from .core import (
    DegenerateAreaError,
    ExtrapolationArea,
    ExtrapolationResult,
    IterationConfig,
    SpectralModel,
    init_model,
    run_extrapolation,
    select_basis,
    project_coefficient,
    update_model,
    weighted_error,
)
from .kernels import HAVE_NUMBA, available_backends, get_backend, set_backend
from .lowpass import FilterResponse, build_filter, unit_filter
from .masks import KNOWN, LOST, RECONSTRUCTED, PatternSpec, gen_mask, loss_rate, mask_from_image, mask_to_image
from .metrics import SweepRecord, psnr, sweep, time_method, write_sweep_csv
from .pgm import PgmFormatError, UnsupportedPgmError, quantize, read_pgm, write_pgm
from .weights import build_weights, weight_spectrum

__version__ = "0.1.0"
