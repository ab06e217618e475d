"""Shared fixtures and random-instance helpers."""

from __future__ import annotations

import numpy as np
import pytest

from xfse.masks import KNOWN, LOST, RECONSTRUCTED
from xfse.weights import build_weights


def random_instance(rng: np.random.Generator, max_size: int = 16):
    """Random small window: signal, class map, weights, decay parameters.

    The class map always keeps at least one usable sample; a centred
    rectangle is excluded and a few samples may be partially trusted.
    """
    M = int(rng.integers(4, max_size + 1))
    N = int(rng.integers(4, max_size + 1))
    area_class = np.full((M, N), KNOWN, dtype=np.uint8)
    bh = int(rng.integers(1, max(2, M // 2)))
    bw = int(rng.integers(1, max(2, N // 2)))
    r0 = (M - bh) // 2
    c0 = (N - bw) // 2
    area_class[r0 : r0 + bh, c0 : c0 + bw] = LOST
    recon = (rng.random((M, N)) < 0.15) & (area_class == KNOWN)
    area_class[recon] = RECONSTRUCTED
    # keep at least one fully trusted sample
    if not np.any(area_class == KNOWN):
        area_class[0, 0] = KNOWN
    rho = float(rng.uniform(0.5, 0.95))
    delta = float(rng.uniform(0.1, 1.0))
    weights = build_weights(area_class, rho, delta)
    signal = smooth_signal(rng, M, N)
    return signal, area_class, weights, rho, delta


def smooth_signal(rng: np.random.Generator, M: int, N: int) -> np.ndarray:
    """Random signal with decaying spectrum, scaled to 8-bit-ish levels."""
    spec = np.fft.fft2(rng.standard_normal((M, N)))
    fk = np.minimum(np.arange(M), M - np.arange(M)) / M
    fl = np.minimum(np.arange(N), N - np.arange(N)) / N
    rad = np.hypot(fk[:, None], fl[None, :])
    spec *= 1.0 / (0.05 + rad) ** 1.2
    sig = np.fft.ifft2(spec).real
    lo, hi = sig.min(), sig.max()
    if hi > lo:
        sig = (sig - lo) / (hi - lo) * 220.0 + 20.0
    else:
        sig = np.full((M, N), 128.0)
    return sig


def natural_patch(seed: int, size: int) -> np.ndarray:
    """Deterministic natural-looking patch at integer levels."""
    sig = smooth_signal(np.random.default_rng(seed), size, size)
    return np.floor(sig + 0.5)


@pytest.fixture(scope="session")
def camera() -> np.ndarray:
    from xfse.sampledata import natural_image

    return natural_image("camera")


@pytest.fixture(autouse=True)
def _reset_backend():
    from xfse.kernels import set_backend

    set_backend(None)
    yield
    set_backend(None)
