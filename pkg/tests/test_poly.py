from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orientcorr.poly import (PolyP, _pack, _unpack, as_rational, derivative_at_zero, poly_arith,
                             poly_eval, rational_from_str, rational_to_str)

rats = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 100)
polys = st.lists(rats, max_size=8).map(PolyP)


def test_basic_arithmetic():
    p = PolyP.p()
    a = 1 - p
    assert (a * a).coefficients == (1, -2, 1)
    assert (a**3)(Fraction(1, 2)) == Fraction(1, 8)
    assert PolyP([1, 2, 0, 0]).degree == 1
    assert PolyP([]).is_zero()


def test_half_p_basis():
    # 1 + 2t + 4t^2 with t = p/2 is 1 + p + p^2
    assert PolyP.from_half_p_integers([1, 2, 4]) == PolyP([1, 1, 1])


def test_poly_arith_dispatch():
    a = PolyP([1, 1])
    assert poly_arith(a, a, "add") == PolyP([2, 2])
    assert poly_arith(a, a, "sub").is_zero()
    assert poly_arith(a, Fraction(1, 2), "scale") == PolyP([Fraction(1, 2), Fraction(1, 2)])
    with pytest.raises(TypeError):
        poly_arith(a, a, "scale")
    with pytest.raises(ValueError):
        poly_arith(a, a, "div")


def test_derivative_at_zero():
    a = PolyP([0, 0, 3])
    assert derivative_at_zero(a, 2) == 6
    with pytest.raises(ValueError):
        derivative_at_zero(a, -1)


@pytest.mark.parametrize("s", ["3/4", "-7/2", "5", "0.25"])
def test_rational_strings(s):
    x = as_rational(s)
    assert rational_from_str(rational_to_str(x)) == x


def test_huge_rational_strings():
    x = Fraction(3**40000 + 1, 7**20000)
    assert rational_from_str(rational_to_str(x)) == x


@given(polys, polys, rats)
def test_ring_homomorphism(a, b, x):
    assert poly_eval(a * b, x) == poly_eval(a, x) * poly_eval(b, x)
    assert poly_eval(a + b, x) == poly_eval(a, x) + poly_eval(b, x)


@given(polys)
def test_json_roundtrip(a):
    assert PolyP.from_json(a.to_json()) == a


@given(st.lists(st.integers(-10**12, 10**12), min_size=1, max_size=20))
def test_pack_unpack(coeffs):
    w = 48
    assert _unpack(_pack(coeffs, w), w, len(coeffs)) == coeffs
