import math
from fractions import Fraction

import pytest

from orientcorr import _purekernels as pure
from orientcorr import kernels
from orientcorr.gnp import SYMBOLIC, cov_gnp
from orientcorr.montecarlo import (CounterRNG, Model, OrientedGraph, estimate_annealed,
                                   estimate_quenched, reaches, sample_oriented, stream_key)
from orientcorr.oracle import oracle_quenched


def test_oriented_graph_validation():
    g = OrientedGraph.from_arcs(3, [(0, 1), (1, 2)])
    assert g.edge_count == 2
    assert reaches(g, 0, 2) and not reaches(g, 2, 0) and reaches(g, 1, 1)
    with pytest.raises(ValueError):
        OrientedGraph.from_arcs(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        OrientedGraph(2, [1, 0])


def test_rng_streams_are_reproducible():
    a, b = CounterRNG(7, 3), CounterRNG(7, 3)
    assert [a.next64() for _ in range(5)] == [b.next64() for _ in range(5)]
    assert CounterRNG(7, 4).next64() != CounterRNG(7, 3).next64()
    assert 0 <= a.uniform() < 1
    assert stream_key(7, 0) != stream_key(8, 0)


def test_sample_counts():
    rng = CounterRNG(1)
    g = sample_oriented(10, Model.gnm(17), rng)
    assert g.edge_count == 17
    full = sample_oriented(6, Model.gnp(1.0), CounterRNG(2))
    assert full.edge_count == 15


def test_compiled_and_pure_identical():
    if not kernels.COMPILED:
        pytest.skip("compiled kernels not built")
    from orientcorr import _kernels as fast
    args = (12, False, 0.4, 0, stream_key(5, 0), 3000)
    assert tuple(fast.annealed_counts(*args)) == tuple(pure.annealed_counts(*args))
    args = (9, True, 0.0, 20, stream_key(5, 1), 2000)
    assert tuple(fast.quenched_counts(*args)) == tuple(pure.quenched_counts(*args))


def test_workers_do_not_change_result():
    a = estimate_annealed(10, Model.gnp(0.5), 40_000, 11, streams=4, workers=1)
    b = estimate_annealed(10, Model.gnp(0.5), 40_000, 11, streams=4, workers=4)
    assert a.to_json() == b.to_json()


def test_annealed_agrees_with_exact():
    p = Fraction(1, 2)
    exact = cov_gnp(7, p, SYMBOLIC).cov
    r = estimate_annealed(7, Model.gnp(p), 200_000, 3)
    assert abs(r.z_score(exact)) < 4


def test_jackknife_close_to_delta():
    d = estimate_annealed(7, Model.gnp(0.5), 50_000, 3, se_method="delta")
    j = estimate_annealed(7, Model.gnp(0.5), 50_000, 3, se_method="jackknife")
    assert d.cov == j.cov
    assert math.isclose(d.se_cov, j.se_cov, rel_tol=0.05)


def test_quenched_agrees_with_exact():
    exact = oracle_quenched(5, Fraction(3, 4))
    r = estimate_quenched(5, Model.gnp(0.75), 200_000, 9)
    assert abs(r.z_score(exact)) < 4


def test_bad_models():
    with pytest.raises(ValueError):
        Model.gnp(1.5)
    with pytest.raises(ValueError):
        Model("gnx")
    with pytest.raises(ValueError):
        estimate_annealed(4, Model.gnm(7), 10, 1)
    with pytest.raises(ValueError):
        estimate_annealed(70, Model.gnp(0.5), 10, 1)
