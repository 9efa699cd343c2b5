import warnings
from fractions import Fraction

import mpmath
import pytest

from orientcorr import asymptotics as A
from orientcorr.gnm import q_exact


def test_pc_function_endpoints():
    assert A.pc_function(0) == -1
    assert A.pc_function(1) == 1
    assert A.pc_monotonicity_check(200)


def test_pc_derivative_matches_difference():
    h = mpmath.mpf(10) ** -30
    for p in ("0.2", "0.5", "0.9"):
        with mpmath.workprec(256):
            fd = (A.pc_function(mpmath.mpf(p) + h) - A.pc_function(mpmath.mpf(p) - h)) / (2 * h)
            assert abs(fd - A.pc_derivative(p)) < mpmath.mpf(10) ** -20


def test_varcond_terms_add_up():
    for p in ("0.1", "0.5", "0.8", "1"):
        assert abs(A.varcond_sum_residual(p)) < mpmath.mpf(10) ** -60


def test_gnm_limit_changes_sign_at_pc():
    pc = A.solve_pc()
    assert A.limit_relcov_gnm(pc - Fraction(1, 1000)) < 0 < A.limit_relcov_gnm(pc + Fraction(1, 1000))


def test_approx_q_regime_warning():
    with pytest.warns(A.RegimeWarning):
        A.approx_q(400, 30, 200)


def test_approx_q_close_at_moderate_n():
    n = 100
    N = n * (n - 1) // 2
    m = N // 2
    q = q_exact(n, n, m)
    rel = abs(A.approx_q(n, n, m) * q.denominator / q.numerator - 1)
    assert rel < 0.01


def test_bad_inputs():
    with pytest.raises(ValueError):
        A.approx_cov(10, 0)
    with pytest.raises(ValueError):
        A.approx_cov(10, "0.5", "gnx")
    with pytest.raises(ValueError):
        A.asymptotic_report(3, "0.01")  # not a probability at this size


def test_report_dict():
    d = A.asymptotic_report(40, "0.8").to_dict(8)
    assert d["relcov_limit"] == "0.2"
