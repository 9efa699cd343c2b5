from fractions import Fraction

import gmpy2
import pytest

from orientcorr.gnp import (SYMBOLIC, Backend, ClusterTables, M, SizeGuardError, cov_gnp, cov_poly,
                            critical_ps, f_poly, g_poly)
from orientcorr.modular import gnp_exact_modular, homogenizer, is_prime, primes_below
from orientcorr.poly import poly_eval


def test_small_values():
    # n = 3: a reaches s iff the edge is oriented a->s, or a->b->s
    p = Fraction(1, 2)
    f = poly_eval(f_poly(3), p)
    assert f == 1 - (p / 2 + p * p / 4 * (1 - p / 2))
    assert cov_gnp(3, 1, SYMBOLIC).cov == Fraction(-1, 64)


def test_probabilities_bounded():
    for n in range(3, 12):
        for p in (Fraction(1, 7), Fraction(1, 2), Fraction(1)):
            r = cov_gnp(n, p, SYMBOLIC)
            assert 0 <= r.p_ab <= r.p_a <= 1


@pytest.mark.parametrize("n", [5, 9, 17])
@pytest.mark.parametrize("p", [Fraction(3, 7), Fraction(4, 5), Fraction(1)])
def test_backends_agree(n, p):
    sym = cov_gnp(n, p, SYMBOLIC)
    num = cov_gnp(n, p, Backend.numeric(p))
    assert Fraction(int(num.p_a.numerator), int(num.p_a.denominator)) == sym.p_a
    assert Fraction(int(num.p_ab.numerator), int(num.p_ab.denominator)) == sym.p_ab
    flt = cov_gnp(n, p, Backend.float(p, 256))
    with gmpy2.context(precision=256):
        err = abs(flt.cov - gmpy2.mpq(sym.cov.numerator, sym.cov.denominator))
    assert err < 2.0**-240


def test_modular_matches_direct():
    p = Fraction(4, 5)
    f, g = gnp_exact_modular(20, p)
    assert f == poly_eval(f_poly(20), p)
    assert g == poly_eval(g_poly(20), p)


def test_numeric_above_direct_limit_uses_modular():
    r = cov_gnp(61, Fraction(1, 3))
    f, g = gnp_exact_modular(61, Fraction(1, 3))
    assert r.p_a == f and r.p_ab == g


def test_progress_reported():
    seen = []
    gnp_exact_modular(30, Fraction(4, 5), progress=seen.append)
    assert seen and seen[-1]["done"] == len(seen)
    assert {"done", "needed", "elapsed", "eta"} <= set(seen[0])


def test_primes_and_homogenizer():
    ps = []
    for P in primes_below(1 << 20):
        ps.append(P)
        if len(ps) == 5:
            break
    assert all(is_prime(P) for P in ps) and ps == sorted(ps, reverse=True)
    assert not is_prime(561) and not is_prime(1)
    assert homogenizer(Fraction(4, 5)) == 5
    assert homogenizer(Fraction(1, 3)) == 6


def test_M_precondition():
    assert M(5, 1, 5, 0) is not None
    assert M(5, 2, 2, 2) is not None
    with pytest.raises(ValueError):
        M(5, 1, 1, 2)


def test_guards():
    with pytest.raises(SizeGuardError):
        f_poly(41)
    with pytest.raises(SizeGuardError):
        cov_gnp(130, Fraction(4, 5))
    with pytest.raises(ValueError):
        cov_gnp(5, Fraction(3, 2))
    with pytest.raises(ValueError):
        Backend("numeric")
    with pytest.raises(ValueError):
        Backend("symbolic", Fraction(1, 2))


def test_cov_poly_zero_at_p0():
    for n in (3, 6, 10):
        assert poly_eval(cov_poly(n), 0) == 0


def test_critical_ps_backends_agree():
    tol = Fraction(1, 10**5)
    s = critical_ps(5, tol, 64)
    nmr = critical_ps(5, tol, 64, Backend.numeric(Fraction(1, 2)))
    assert len(s) == len(nmr) == 1
    assert abs(s[0].value - nmr[0].value) <= 2 * tol


def test_tables_thread_safe():
    from concurrent.futures import ThreadPoolExecutor

    t = ClusterTables(Backend.numeric(Fraction(2, 3)), 12)
    with ThreadPoolExecutor(4) as ex:
        vals = list(ex.map(lambda n: t.f(n), [12, 11, 12, 10, 12]))
    assert vals[0] == vals[2] == vals[4]
