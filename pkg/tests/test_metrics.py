import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from markbench import DimensionError, QualityReport, ber, image_report, mae, mse, nc, psnr

unit_images = arrays(
    np.float64,
    (8, 8),
    elements=st.floats(0.0, 1.0, allow_nan=False, allow_infinity=False),
)


def test_identical_images_have_zero_error():
    x = np.random.default_rng(0).random((16, 16))
    assert mse(x, x) == 0.0
    assert mae(x, x) == 0.0
    assert psnr(x, x) == math.inf


def test_opposite_extremes():
    a = np.zeros((8, 8))
    b = np.ones((8, 8))
    assert mse(a, b) == 1.0
    assert mae(a, b) == 1.0


def test_psnr_forty_db_at_mse_1e_neg4():
    a = np.zeros((4, 4))
    b = np.full((4, 4), 0.01)
    assert abs(psnr(a, b) - 40.0) < 1e-9


def test_mismatched_shapes_raise():
    a = np.zeros((4, 4))
    b = np.zeros((4, 8))
    for fn in (mse, mae, psnr, nc, ber):
        with pytest.raises(DimensionError):
            fn(a, b)


@given(unit_images, unit_images)
def test_error_metrics_are_symmetric(a, b):
    assert mse(a, b) == mse(b, a)
    assert mae(a, b) == mae(b, a)


@given(unit_images, unit_images)
def test_mae_squared_bounded_by_mse(a, b):
    assert mae(a, b) ** 2 <= mse(a, b) + 1e-15


def test_bit_metrics_on_equal_and_complement():
    w = (np.random.default_rng(5).random((32, 32)) < 0.5).astype(np.uint8)
    assert nc(w, w) == 1.0
    assert ber(w, w) == 0.0
    assert nc(w, 1 - w) == -1.0
    assert ber(w, 1 - w) == 1.0


def test_nc_of_all_zero_logos_is_one():
    z = np.zeros((32, 32), dtype=np.uint8)
    assert nc(z, z) == 1.0


def test_ber_zero_iff_equal():
    rng = np.random.default_rng(9)
    for _ in range(25):
        a = (rng.random((32, 32)) < 0.5).astype(np.uint8)
        b = a.copy()
        assert ber(a, b) == 0.0
        b[rng.integers(32), rng.integers(32)] ^= 1
        assert ber(a, b) > 0.0


def test_random_pairs_average_half_ber():
    # independent logos disagree on half their bits on average
    rng = np.random.default_rng(1234)
    total = 0.0
    trials = 1000
    for _ in range(trials):
        a = (rng.random((32, 32)) < 0.5).astype(np.uint8)
        b = (rng.random((32, 32)) < 0.5).astype(np.uint8)
        total += ber(a, b)
    assert abs(total / trials - 0.5) < 0.02


def test_quality_report_serializes_inf_sentinel():
    x = np.random.default_rng(2).random((8, 8))
    report = image_report(x, x)
    d = report.to_dict()
    assert d["psnr"] == "inf"
    assert d["mse"] == 0.0
    assert "nc" not in d and "ber" not in d


def test_quality_report_keeps_finite_psnr():
    report = QualityReport(mse=1e-4, mae=1e-2, psnr=40.0, nc=0.5, ber=0.25)
    d = report.to_dict()
    assert d == {"mse": 1e-4, "mae": 1e-2, "psnr": 40.0, "nc": 0.5, "ber": 0.25}
