import io
import math

import numpy as np
import pytest

from xfse.conceal import ConcealConfig
from xfse.masks import CONSECUTIVE, PatternSpec, gen_mask
from xfse.metrics import SweepRecord, psnr, sweep, time_method, write_sweep_csv

from conftest import natural_patch


def test_psnr_identical_is_infinite():
    img = natural_patch(40, 32)
    assert psnr(img, img) == float("inf")


def test_psnr_unit_offset_closed_form():
    img = natural_patch(41, 32)
    assert psnr(img, img + 1.0) == pytest.approx(10 * math.log10(255.0**2), rel=1e-12)
    assert psnr(img, img + 1.0) == pytest.approx(48.1308036086791, rel=1e-12)


def test_psnr_extremes_zero_db():
    a = np.zeros((8, 8))
    b = np.full((8, 8), 255.0)
    assert psnr(a, b) == pytest.approx(0.0, abs=1e-12)


def test_psnr_symmetry():
    a = natural_patch(42, 16)
    b = natural_patch(43, 16)
    assert psnr(a, b) == psnr(b, a)


def test_psnr_dimension_mismatch():
    with pytest.raises(ValueError):
        psnr(np.zeros((4, 4)), np.zeros((4, 5)))


def test_sweep_grid_validation():
    img = np.full((32, 32), 100.0)
    mask = gen_mask(PatternSpec(CONSECUTIVE, block_size=8), 32, 32)
    cfg = ConcealConfig(block_size=8, area_size=24)
    with pytest.raises(ValueError):
        sweep(img, mask, cfg, [])
    with pytest.raises(ValueError):
        sweep(img, mask, cfg, [10, 10])
    with pytest.raises(ValueError):
        sweep(img, mask, cfg, [0, 5])


def test_sweep_constant_image_hits_infinity():
    img = np.full((32, 32), 100.0)
    mask = gen_mask(PatternSpec(CONSECUTIVE, block_size=8), 32, 32)
    cfg = ConcealConfig(block_size=8, area_size=24, gamma=1.0, method="fse")
    records = sweep(img, mask, cfg, [1])
    assert records[0].iteration == 1
    assert records[0].psnr_db == float("inf")


def test_sweep_records_follow_grid():
    img = natural_patch(44, 48)
    mask = gen_mask(PatternSpec(CONSECUTIVE, block_size=8), 48, 48)
    cfg = ConcealConfig(block_size=8, area_size=24, method="fse")
    records = sweep(img, mask, cfg, [5, 10, 20])
    assert [r.iteration for r in records] == [5, 10, 20]
    assert all(np.isfinite(r.weighted_error) for r in records)
    # more iterations remove more weighted residual energy
    assert records[-1].weighted_error <= records[0].weighted_error


def test_csv_format_and_infinity_literal():
    buf = io.StringIO()
    write_sweep_csv(
        [SweepRecord(1, float("inf"), 0.0), SweepRecord(10, 33.124999, 12.5)],
        buf,
    )
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "iteration,psnr_db,weighted_error"
    assert lines[1] == "1,inf,0.0"
    assert lines[2] == "10,33.124999,12.5"


def test_time_method_runs_at_least_three_times():
    img = np.full((32, 32), 100.0)
    mask = gen_mask(PatternSpec(CONSECUTIVE, block_size=8), 32, 32)
    cfg = ConcealConfig(block_size=8, area_size=24, iterations=5)
    t = time_method(img, mask, cfg, repeats=3)
    assert t > 0.0
