from fractions import Fraction

import pytest

from orientcorr import _purekernels as pure
from orientcorr import kernels
from orientcorr.oracle import (OracleSizeError, decode_state, encode_state, oracle_annealed,
                               oracle_counts, oracle_counts_range, oracle_cross_term, oracle_gnm,
                               oracle_quenched, oracle_quenched_gnm)
from orientcorr.poly import poly_eval


def test_state_encoding_roundtrip():
    for idx in range(27):
        assert encode_state(decode_state(3, idx)) == idx


def test_n3_by_hand():
    # a reaches s via a->s, or a->b->s with a-s absent or pointing s->a
    p = Fraction(1, 3)
    f = oracle_annealed(3, p)[0]
    reach = p / 2 + (1 - p / 2) * (p / 2) ** 2
    assert f == 1 - reach


def test_chunks_merge():
    full = oracle_counts(5)
    half = oracle_counts_range(5, 0, 1 << 9).merge(oracle_counts_range(5, 1 << 9, 1 << 10))
    assert (full.a, full.b, full.ab, full.axb) == (half.a, half.b, half.ab, half.axb)


def test_compiled_matches_pure():
    if not kernels.COMPILED:
        pytest.skip("compiled kernels not built")
    assert kernels.oracle_counts(5) == tuple(pure.oracle_counts(5))


def test_quenched_identity():
    # annealed cov = quenched cov + cross term
    for n in (3, 4, 5):
        f, g = oracle_annealed(n)
        ann = g - f * f
        assert ann == oracle_quenched(n) + oracle_cross_term(n)


def test_quenched_not_above_annealed():
    for n in (4, 5, 6):
        cross = oracle_cross_term(n)
        for i in range(1, 33):
            assert poly_eval(cross, Fraction(i, 32)) >= 0


def test_gnm_endpoints():
    h, k = oracle_gnm(4)
    assert h[0] == k[0] == 1
    q = oracle_quenched_gnm(4)
    assert q[0] == 0 and q[-1] == 0


def test_size_guards():
    with pytest.raises(OracleSizeError):
        oracle_annealed(6)
    with pytest.raises(OracleSizeError):
        oracle_quenched(7)
    with pytest.raises(OracleSizeError):
        oracle_quenched(8, long_running=True)
