"""Isotropic low-pass frequency weighting for the filtered extrapolation.

The response follows the average power spectral density of natural images:
a radially decaying law in the normalized frequency radius, scaled by a
gain G, smoothed by a logarithm, and normalized so the DC bin is exactly 1.
Frequencies are folded to the signed range (f_k = min(k, M-k)/M) so the
grid is even, matching the circular symmetry of the model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DEFAULT_GAIN",
    "DEFAULT_F0",
    "FilterResponse",
    "build_filter",
    "unit_filter",
]

# Gain chosen so the response stays strictly positive up to the Nyquist
# corner; f0 = 0.06 / (2*pi), the bandwidth of the natural-image spectrum law.
DEFAULT_GAIN = 292.9
DEFAULT_F0 = 0.0098


@dataclass(frozen=True)
class FilterResponse:
    """Precomputed real, even, positive frequency weighting grid."""

    rows: int
    cols: int
    H: np.ndarray = field(repr=False)
    gain: float | None = None
    f0: float | None = None

    @property
    def is_unit(self) -> bool:
        return self.gain is None


def folded_freq(n_bins: int) -> np.ndarray:
    """Normalized frequency magnitude per DFT bin: min(k, n-k) / n."""
    k = np.arange(n_bins)
    return np.minimum(k, n_bins - k) / float(n_bins)


def build_filter(
    rows: int,
    cols: int,
    gain: float = DEFAULT_GAIN,
    f0: float = DEFAULT_F0,
) -> FilterResponse:
    """Build the rows x cols low-pass response.

    Raises ValueError if the parameters would make the response
    non-positive anywhere on the grid (the log numerator must stay
    positive up to the Nyquist corner).
    """
    if gain <= 0.0 or f0 <= 0.0:
        raise ValueError(f"gain and f0 must be positive, got gain={gain}, f0={f0}")
    denom = math.log(gain / (2.0 * math.pi * f0 * f0))
    if denom <= 0.0:
        raise ValueError("filter normalizer log(gain / (2*pi*f0^2)) must be positive")
    fk = folded_freq(rows)[:, None]
    fl = folded_freq(cols)[None, :]
    r2 = f0 * f0 + fk * fk + fl * fl
    arg = gain * (f0 / (2.0 * math.pi)) / r2**1.5
    if np.any(arg <= 1.0):
        raise ValueError(
            "filter response is not positive everywhere; increase gain or f0 "
            f"(minimum log argument {arg.min():.6g} <= 1)"
        )
    H = np.log(arg) / denom
    H[0, 0] = 1.0  # normalization is exact by construction; pin the fp value
    return FilterResponse(rows=rows, cols=cols, H=H, gain=gain, f0=f0)


def unit_filter(rows: int, cols: int) -> FilterResponse:
    """All-ones response: running the core with it is the unfiltered method."""
    return FilterResponse(rows=rows, cols=cols, H=np.ones((rows, cols)), gain=None, f0=None)
