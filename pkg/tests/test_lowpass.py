import math

import numpy as np
import pytest

from xfse.lowpass import DEFAULT_F0, DEFAULT_GAIN, build_filter, unit_filter


def direct_response(k, l, M, N, gain=DEFAULT_GAIN, f0=DEFAULT_F0):
    """Scalar evaluation of the response law for one bin."""
    fk = min(k, M - k) / M
    fl = min(l, N - l) / N
    num = math.log(gain * (f0 / (2 * math.pi)) / (f0 * f0 + fk * fk + fl * fl) ** 1.5)
    return num / math.log(gain / (2 * math.pi * f0 * f0))


def test_dc_is_exactly_one():
    assert build_filter(64, 64).H[0, 0] == 1.0
    assert build_filter(48, 48, 400.0, 0.02).H[0, 0] == 1.0


def test_nyquist_corner_value_64():
    H = build_filter(64, 64).H
    assert direct_response(32, 32, 64, 64) == pytest.approx(0.019553947859025134, rel=1e-12)
    assert H[32, 32] == pytest.approx(0.019553947859025134, rel=1e-10)


def test_matches_direct_evaluation_everywhere():
    resp = build_filter(48, 48)
    for k in (0, 1, 5, 24, 40, 47):
        for l in (0, 2, 17, 24, 33, 47):
            assert resp.H[k, l] == pytest.approx(direct_response(k, l, 48, 48), rel=1e-12)


def test_amplitude_cutoff_bin_64():
    # linear interpolation along the first axis crosses 1/sqrt(2) at the
    # documented bin; the half-power-on-H reading would land near 5.5.
    H = build_filter(64, 64).H
    target = 2.0**-0.5
    col = H[:33, 0]
    k = int(np.flatnonzero(col < target)[0])
    crossing = (k - 1) + (col[k - 1] - target) / (col[k - 1] - col[k])
    assert crossing == pytest.approx(2.1887472681727163, abs=1e-9)
    assert abs(crossing - 2.17) <= 0.05


def test_even_symmetry():
    H = build_filter(16, 12).H
    M, N = H.shape
    for k in range(M):
        for l in range(N):
            assert H[k, l] == H[(M - k) % M, (N - l) % N]


def test_radial_monotone_and_bounded():
    resp = build_filter(64, 64)
    fk = np.minimum(np.arange(64), 64 - np.arange(64)) / 64
    r2 = (fk**2)[:, None] + (fk**2)[None, :]
    order = np.argsort(r2.ravel(), kind="stable")
    h = resp.H.ravel()[order]
    assert np.all(np.diff(h) <= 1e-12)
    assert np.all(resp.H > 0.0)
    assert np.all(resp.H <= 1.0)


def test_invalid_parameters_raise():
    with pytest.raises(ValueError):
        build_filter(64, 64, gain=1.0, f0=0.0098)  # response would go non-positive
    with pytest.raises(ValueError):
        build_filter(64, 64, gain=-5.0)
    with pytest.raises(ValueError):
        build_filter(64, 64, f0=0.0)


def test_unit_filter():
    resp = unit_filter(48, 48)
    assert resp.is_unit
    assert resp.H.shape == (48, 48)
    assert np.all(resp.H == 1.0)
    assert resp.H[0, 0] == 1.0
