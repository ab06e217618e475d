"""Spatial weighting of an extrapolation window and its spectrum.

Each sample of the window is weighted by its reliability and its radial
distance to the window centre: originally known samples get an isotropic
exponential decay rho_hat**d, samples reconstructed for earlier blocks get
the same decay scaled by an extra trust factor delta in [0, 1], and unknown
samples get weight 0 so they cannot influence the model.

Window sample classes reuse the mask-state vocabulary from masks.py:
KNOWN -> support, LOST -> excluded, RECONSTRUCTED -> partially trusted.
"""

from __future__ import annotations

import numpy as np

from .masks import KNOWN, RECONSTRUCTED

__all__ = [
    "DEFAULT_RHO_HAT",
    "DEFAULT_DELTA",
    "build_weights",
    "weight_spectrum",
]

# The decay base and trust factor are configuration, not constants of the
# method; these defaults are the values commonly used with 48x48 windows.
DEFAULT_RHO_HAT = 0.8
DEFAULT_DELTA = 0.5


def build_weights(
    area_class: np.ndarray,
    rho_hat: float = DEFAULT_RHO_HAT,
    delta: float = DEFAULT_DELTA,
) -> np.ndarray:
    """Build the M x N weight grid for a window classification.

    The radial distance is measured to the exact grid centre
    ((M-1)/2, (N-1)/2), which is non-integer for even dimensions.
    """
    if not 0.0 < rho_hat < 1.0:
        raise ValueError(f"rho_hat must lie in (0, 1), got {rho_hat}")
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    area_class = np.asarray(area_class)
    rows, cols = area_class.shape
    m = np.arange(rows, dtype=np.float64)[:, None] - (rows - 1) / 2.0
    n = np.arange(cols, dtype=np.float64)[None, :] - (cols - 1) / 2.0
    decay = rho_hat ** np.hypot(m, n)
    w = np.zeros((rows, cols), dtype=np.float64)
    w[area_class == KNOWN] = decay[area_class == KNOWN]
    w[area_class == RECONSTRUCTED] = delta * decay[area_class == RECONSTRUCTED]
    # LOST samples stay at exactly 0 and are thereby excluded everywhere
    return w


def weight_spectrum(w: np.ndarray) -> np.ndarray:
    """Unnormalized forward 2D DFT of the weight grid.

    The (0, 0) bin equals the sum of all weights; it is the normalizer of
    every projection in the extrapolation iteration.
    """
    return np.fft.fft2(np.asarray(w, dtype=np.float64))
