"""Exhaustive enumeration over all edge states, used as ground truth.

Each unordered pair {i, j} (i < j, lexicographic order) is absent, forward
(i -> j) or backward (j -> i).  Rather than walking the 3**N states one by
one, the kernel walks each edge subset once and visits its 2**e
orientations in Gray-code order, so a single edge flips between
consecutive states.  Counts are aggregated by edge count e, which is all
the polynomial answers need: a graph with e edges has weight
p**e (1-p)**(N-e) and each orientation a further 2**-e.

Vertex roles are s = 0, a = 1, b = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .poly import PolyP, as_rational, binomial, poly_eval

__all__ = [
    "ABSENT",
    "FORWARD",
    "BACKWARD",
    "edge_pairs",
    "encode_state",
    "decode_state",
    "OracleCounts",
    "oracle_counts",
    "oracle_annealed",
    "oracle_quenched",
    "oracle_cross_term",
    "oracle_gnm",
    "oracle_quenched_gnm",
    "OracleSizeError",
]

ABSENT, FORWARD, BACKWARD = 0, 1, 2

SYMBOLIC_MAX_N = 5
QUENCHED_MAX_N = 6
LONG_RUNNING_MAX_N = 7


class OracleSizeError(ValueError):
    pass


def edge_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def encode_state(states) -> int:
    """Index in [0, 3**N) of a per-edge state sequence (edge 0 least significant)."""
    idx = 0
    for s in reversed(list(states)):
        if s not in (ABSENT, FORWARD, BACKWARD):
            raise ValueError(f"bad edge state {s!r}")
        idx = 3 * idx + s
    return idx


def decode_state(n: int, idx: int) -> tuple[int, ...]:
    N = n * (n - 1) // 2
    if not 0 <= idx < 3**N:
        raise ValueError("state index out of range")
    out = []
    for _ in range(N):
        idx, s = divmod(idx, 3)
        out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class OracleCounts:
    """Orientation counts summed over graphs with e edges, for e = 0..N.

    ``a[e]``   sum over graphs of #orientations where a does not reach s
    ``b[e]``   same for s does not reach b
    ``ab[e]``  same for both events
    ``axb[e]`` sum over graphs of #A-orientations times #B-orientations
    """

    n: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    ab: tuple[int, ...]
    axb: tuple[int, ...]

    @property
    def N(self) -> int:
        return self.n * (self.n - 1) // 2

    def merge(self, other: "OracleCounts") -> "OracleCounts":
        if other.n != self.n:
            raise ValueError("cannot merge counts for different n")

        def add(x, y):
            return tuple(i + j for i, j in zip(x, y))

        return OracleCounts(self.n, add(self.a, other.a), add(self.b, other.b),
                            add(self.ab, other.ab), add(self.axb, other.axb))


def _check(n: int, limit: int, long_running: bool, what: str) -> None:
    if n < 3:
        raise ValueError("need n >= 3")
    if n <= limit:
        return
    if n <= LONG_RUNNING_MAX_N and long_running:
        return
    if n <= LONG_RUNNING_MAX_N:
        raise OracleSizeError(f"{what} oracle for n = {n} takes minutes; pass long_running=True")
    raise OracleSizeError(f"{what} oracle supports n <= {LONG_RUNNING_MAX_N}")


def oracle_counts_range(n: int, lo: int, hi: int) -> OracleCounts:
    """Counts restricted to edge-subset masks in [lo, hi)."""
    a, b, ab, axb = kernels.oracle_counts(n, lo, hi)
    return OracleCounts(n, tuple(a), tuple(b), tuple(ab), tuple(axb))


@lru_cache(maxsize=None)
def _counts(n: int, chunks: int) -> OracleCounts:
    N = n * (n - 1) // 2
    total = 1 << N
    bounds = [total * i // chunks for i in range(chunks + 1)]
    out = None
    for lo, hi in zip(bounds, bounds[1:]):
        part = oracle_counts_range(n, lo, hi)
        out = part if out is None else out.merge(part)
    return out


def oracle_counts(n: int, long_running: bool = False, chunks: int = 1) -> OracleCounts:
    _check(n, QUENCHED_MAX_N, long_running, "enumeration")
    return _counts(n, chunks)


def _mixture(n: int, weights, scale_pow: int) -> PolyP:
    # sum_e w[e] / 2**(scale_pow*e) * p**e * (1-p)**(N-e)
    N = n * (n - 1) // 2
    one_minus = PolyP([1, -1])
    total = PolyP([])
    powers = [PolyP([1])]
    for _ in range(N):
        powers.append(powers[-1] * one_minus)
    for e, w in enumerate(weights):
        if not w:
            continue
        term = PolyP.from_integers([0] * e + [w], 1 << (scale_pow * e))
        total = total + term * powers[N - e]
    return total


def oracle_annealed(n: int, p=None, *, allow_large: bool = False, long_running: bool = False):
    """(P(s does not reach b), P(a does not reach s, s does not reach b)).

    Exact polynomials in p by default; with ``p`` given, exact rationals at p.
    """
    if p is None and n > SYMBOLIC_MAX_N and not allow_large:
        raise OracleSizeError(f"symbolic oracle refuses n > {SYMBOLIC_MAX_N} without allow_large")
    c = oracle_counts(n, long_running)
    f = _mixture(n, c.b, 1)
    g = _mixture(n, c.ab, 1)
    if p is None:
        return f, g
    p = as_rational(p)
    return poly_eval(f, p), poly_eval(g, p)


def oracle_quenched(n: int, p=None, *, long_running: bool = False):
    """Graph-averaged covariance E_G[P(AB|G) - P(A|G) P(B|G)]."""
    c = oracle_counts(n, long_running)
    w = [ab * 2**e - axb for e, (ab, axb) in enumerate(zip(c.ab, c.axb))]
    q = _mixture(n, w, 2)
    return q if p is None else poly_eval(q, as_rational(p))


def oracle_cross_term(n: int, p=None, *, long_running: bool = False):
    """Covariance over graphs of P(A|G) and P(B|G)."""
    c = oracle_counts(n, long_running)
    f = _mixture(n, c.b, 1)
    fa = _mixture(n, c.a, 1)
    x = _mixture(n, c.axb, 2) - fa * f
    return x if p is None else poly_eval(x, as_rational(p))


def oracle_gnm(n: int, *, long_running: bool = False) -> tuple[list[Fraction], list[Fraction]]:
    """Annealed G(n, m) values (P(A), P(A and B)) for m = 0..N by enumeration."""
    c = oracle_counts(n, long_running)
    N = c.N
    h = [Fraction(c.a[m], binomial(N, m) << m) for m in range(N + 1)]
    k = [Fraction(c.ab[m], binomial(N, m) << m) for m in range(N + 1)]
    return h, k


def oracle_quenched_gnm(n: int, *, long_running: bool = False) -> list[Fraction]:
    """Quenched covariance in G(n, m), m = 0..N: the quenched sum restricted to m edges."""
    c = oracle_counts(n, long_running)
    N = c.N
    return [Fraction(c.ab[m] * 2**m - c.axb[m], binomial(N, m) << (2 * m)) for m in range(N + 1)]
