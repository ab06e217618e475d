import math

import numpy as np
import pytest

from xfse.masks import KNOWN, LOST, RECONSTRUCTED
from xfse.weights import build_weights, weight_spectrum

from oracle import dft_by_summation


def test_centre_sample_weight_is_one():
    cls = np.full((47, 47), KNOWN, dtype=np.uint8)
    w = build_weights(cls, 0.8, 0.5)
    assert w[23, 23] == 1.0


def test_corner_weight_48():
    # 0.8 ** sqrt(2 * 23.5^2) evaluated directly
    expected = 0.8 ** math.sqrt(2.0 * 23.5 * 23.5)
    assert expected == pytest.approx(6.015764325706661e-4, rel=1e-12)
    cls = np.full((48, 48), KNOWN, dtype=np.uint8)
    w = build_weights(cls, 0.8, 0.5)
    assert w[0, 0] == pytest.approx(expected, rel=1e-12)


def test_excluded_samples_zero_for_any_params():
    rng = np.random.default_rng(1)
    cls = rng.choice([KNOWN, LOST, RECONSTRUCTED], size=(9, 7)).astype(np.uint8)
    for rho, delta in ((0.3, 0.0), (0.8, 0.5), (0.99, 1.0)):
        w = build_weights(cls, rho, delta)
        assert np.all(w[cls == LOST] == 0.0)
        assert np.all(w[cls == KNOWN] > 0.0)


def test_reconstructed_scaled_by_delta():
    cls_a = np.full((8, 8), KNOWN, dtype=np.uint8)
    cls_r = np.full((8, 8), RECONSTRUCTED, dtype=np.uint8)
    wa = build_weights(cls_a, 0.8, 0.25)
    wr = build_weights(cls_r, 0.8, 0.25)
    assert np.allclose(wr, 0.25 * wa, rtol=1e-15)


def test_monotone_decay_with_distance():
    cls = np.full((21, 21), KNOWN, dtype=np.uint8)
    w = build_weights(cls, 0.7, 0.5)
    centre = (21 - 1) / 2.0
    d = np.hypot(*(np.indices((21, 21)) - centre))
    order = np.argsort(d.ravel())
    dv, wv = d.ravel()[order], w.ravel()[order]
    for i in range(1, len(dv)):
        if dv[i] > dv[i - 1]:
            assert wv[i] < wv[i - 1]
        else:
            assert wv[i] == wv[i - 1]


def test_rho_out_of_range():
    cls = np.full((4, 4), KNOWN, dtype=np.uint8)
    for rho in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            build_weights(cls, rho, 0.5)


def test_delta_out_of_range():
    cls = np.full((4, 4), KNOWN, dtype=np.uint8)
    for delta in (-0.1, 1.1):
        with pytest.raises(ValueError):
            build_weights(cls, 0.8, delta)


def test_spectrum_of_constant_grid():
    W = weight_spectrum(np.ones((6, 5)))
    assert W[0, 0] == pytest.approx(30.0, abs=1e-12)
    W[0, 0] = 0.0
    assert np.abs(W).max() < 1e-10


def test_spectrum_of_impulse():
    w = np.zeros((5, 4))
    w[0, 0] = 1.0
    assert np.allclose(weight_spectrum(w), 1.0, atol=1e-12)


def test_spectrum_matches_direct_summation():
    rng = np.random.default_rng(3)
    w = rng.random((8, 8))
    W = weight_spectrum(w)
    ref = dft_by_summation(w)
    assert np.abs(W - ref).max() <= 1e-10 * np.abs(ref).max()


def test_spectrum_dc_is_weight_sum_and_symmetry():
    rng = np.random.default_rng(4)
    cls = rng.choice([KNOWN, LOST, RECONSTRUCTED], size=(12, 10)).astype(np.uint8)
    w = build_weights(cls, 0.8, 0.5)
    W = weight_spectrum(w)
    assert W[0, 0].real == pytest.approx(w.sum(), rel=1e-10)
    assert abs(W[0, 0].imag) < 1e-10
    M, N = W.shape
    for k in range(M):
        for l in range(N):
            assert W[k, l] == pytest.approx(np.conj(W[(M - k) % M, (N - l) % N]), abs=1e-9)
