import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from orientcorr.gnm import (critical_m, cov_gnm, gnm_tables, invert_to_gnm, m_from_fraction, mixture,
                            no_edge_prob, q_exact)
from orientcorr.gnp import f_poly
from orientcorr.oracle import oracle_gnm
from orientcorr.poly import PolyP, binomial


def q_brute(l, n, m):
    # fixed oriented arcs on the first l pairs; count (edge set, orientation) avoiding them
    N = n * (n - 1) // 2
    good = Fraction(0)
    for S in combinations(range(N), m):
        bad = [e for e in S if e < l]
        good += Fraction(1, 2 ** len(bad))
    return good / binomial(N, m)


@pytest.mark.parametrize("l,n,m", [(0, 4, 3), (2, 4, 3), (6, 4, 6), (3, 5, 4), (5, 5, 10), (4, 5, 0)])
def test_q_exact_brute(l, n, m):
    assert q_exact(l, n, m) == q_brute(l, n, m)


@settings(max_examples=300)
@given(st.integers(3, 60).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(0, n * (n - 1) // 2), st.integers(0, n * (n - 1) // 2))))
def test_q_bound(t):
    n, l, m = t
    N = n * (n - 1) // 2
    assert q_exact(l, n, m) <= (1 - Fraction(m, N) / 2) ** l


def test_no_edge_prob():
    assert no_edge_prob(0, 5, 3) == 1
    assert no_edge_prob(8, 5, 3) == 0
    assert no_edge_prob(1, 4, 1) == Fraction(5, 6)


def test_h3():
    assert list(gnm_tables(3).h) == [1, Fraction(5, 6), Fraction(7, 12), Fraction(3, 8)]


@pytest.mark.parametrize("n", [4, 5])
def test_tables_match_oracle(n):
    h, k = oracle_gnm(n)
    t = gnm_tables(n)
    assert list(t.h) == h and list(t.k) == k


def test_mixture_roundtrip():
    for n in range(3, 9):
        t = gnm_tables(n)
        assert mixture(t.h, n) == f_poly(n)


def test_inversion_rejects_non_probability():
    with pytest.raises(ArithmeticError):
        invert_to_gnm(PolyP([1, 5]), 3)
    with pytest.raises(ValueError):
        invert_to_gnm(PolyP([0] * 5 + [1]), 3)


def test_critical_m():
    assert critical_m(5) == [(8, 9)]
    assert (6, 6) in critical_m(4)
    assert cov_gnm(4, 6).cov == 0


def test_m_from_fraction_ties_to_even():
    # N = 10 for n = 5; 0.25 * 10 = 2.5 rounds to 2, 0.35 * 10 = 3.5 rounds to 4
    assert m_from_fraction(Fraction(1, 4), 5) == 2
    assert m_from_fraction(Fraction(7, 20), 5) == 4
    with pytest.raises(ValueError):
        m_from_fraction(Fraction(3, 2), 5)
