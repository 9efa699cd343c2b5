"""Exact probabilities in a randomly oriented G(n, m).

The G(n, p) polynomials are binomial mixtures of the G(n, m) values,
f_n(p) = sum_m C(N, m) p^m (1-p)^(N-m) h_n(m), and the mixture is inverted
coefficient by coefficient.  The inversion alternates in sign and is only
usable in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .csvio import write_csv
from .gnp import SYMBOLIC_MAX_N, SizeGuardError, f_poly, g_poly
from .poly import PolyP, as_rational, binomial
from .report import CovarianceReport

__all__ = [
    "q_exact",
    "no_edge_prob",
    "invert_to_gnm",
    "mixture",
    "GnmTables",
    "gnm_tables",
    "cov_gnm",
    "critical_m",
    "m_from_fraction",
]


def _N(n: int) -> int:
    if n < 2:
        raise ValueError("need n >= 2")
    return n * (n - 1) // 2


def q_exact(l: int, n: int, m: int) -> Fraction:
    """P(l fixed oriented edges all avoid the random oriented G(n, m)).

    If X of the l underlying pairs are among the m chosen ones
    (hypergeometric), the answer given X = k is 2**-k.  Terms are generated
    with the ratio T(k+1)/T(k) of consecutive C(l,k) C(N-l, m-k), all in
    integers.
    """
    N = _N(n)
    if not (0 <= l <= N and 0 <= m <= N):
        raise ValueError("need 0 <= l <= N and 0 <= m <= N")
    k0 = max(0, m - (N - l))
    k1 = min(l, m)
    t = binomial(l, k0) * binomial(N - l, m - k0)
    num = 0
    for k in range(k0, k1 + 1):
        num += t << (l - k)
        if k < k1:
            t = t * (l - k) * (m - k) // ((k + 1) * (N - l - m + k + 1))
    return Fraction(num, binomial(N, m) << l)


def no_edge_prob(l: int, n: int, m: int) -> Fraction:
    """P(none of l fixed pairs is among the m chosen ones)."""
    N = _N(n)
    if l < 0 or not 0 <= m <= N:
        raise ValueError("need l >= 0 and 0 <= m <= N")
    if l + m > N:
        return Fraction(0)
    return Fraction(binomial(N - l, m), binomial(N, m))


def invert_to_gnm(poly: PolyP, n: int, check: bool = True) -> list[Fraction]:
    """Values h(0..N) with poly(p) = sum_m C(N,m) p^m (1-p)^(N-m) h(m).

    Raises ArithmeticError if a value leaves [0, 1] (``check=True``), which
    means the input was not a probability polynomial for this n.
    """
    N = _N(n)
    if poly.degree > N:
        raise ValueError(f"degree {poly.degree} exceeds N = {N}")
    h: list[Fraction] = []
    for m in range(N + 1):
        v = poly.coeff(m) / binomial(N, m)
        s = Fraction(0)
        for i in range(m):
            term = binomial(m, i) * h[i]
            s += term if (m - i) % 2 == 0 else -term
        v -= s
        if check and not 0 <= v <= 1:
            raise ArithmeticError(f"inverted value at m = {m} is {v}, outside [0, 1]")
        h.append(v)
    return h


def mixture(values, n: int) -> PolyP:
    """sum_m C(N, m) p^m (1-p)^(N-m) values[m] as a polynomial."""
    N = _N(n)
    if len(values) != N + 1:
        raise ValueError("need N + 1 values")
    one_minus = PolyP([1, -1])
    pw = [PolyP([1])]
    for _ in range(N):
        pw.append(pw[-1] * one_minus)
    total = PolyP([])
    for m, v in enumerate(values):
        v = as_rational(v)
        if v:
            total = total + PolyP([0] * m + [v * binomial(N, m)]) * pw[N - m]
    return total


@dataclass(frozen=True)
class GnmTables:
    """h[m] = P(a does not reach s), k[m] = P(a does not reach s, s does not reach b) in G(n, m)."""

    n: int
    h: tuple
    k: tuple

    @property
    def N(self) -> int:
        return _N(self.n)

    def cov(self, m: int) -> Fraction:
        return self.k[m] - self.h[m] ** 2

    def relcov(self, m: int) -> Fraction | None:
        return self.cov(m) / self.k[m] if self.k[m] else None

    def validate(self) -> None:
        if self.h[0] != 1 or self.k[0] != 1:
            raise ArithmeticError("empty graph must give probability 1")
        for m in range(self.N + 1):
            if not 0 <= self.k[m] <= self.h[m] <= 1:
                raise ArithmeticError(f"ordering 0 <= k <= h <= 1 fails at m = {m}")

    def rows(self) -> list[dict]:
        return [{"m": m, "h": self.h[m], "k": self.k[m], "cov": self.cov(m)} for m in range(self.N + 1)]

    def to_csv(self, fh=None, digits: int = 17, exact: bool = True) -> str:
        return write_csv("gnm-table", self.rows(), digits, exact, fh, notes=[f"n={self.n} N={self.N}"])


@lru_cache(maxsize=None)
def gnm_tables(n: int, allow_large: bool = False) -> GnmTables:
    """Exact G(n, m) tables from the symbolic G(n, p) polynomials."""
    if n < 3:
        raise ValueError("need n >= 3")
    if n > SYMBOLIC_MAX_N and not allow_large:
        raise SizeGuardError(f"G(n, m) tables need the symbolic backend; n > {SYMBOLIC_MAX_N} refused")
    h = invert_to_gnm(f_poly(n, allow_large=allow_large), n)
    k = invert_to_gnm(g_poly(n, allow_large=allow_large), n)
    t = GnmTables(n, tuple(h), tuple(k))
    t.validate()
    return t


def cov_gnm(n: int, m: int) -> CovarianceReport:
    N = _N(n)
    if n < 3 or not 0 <= m <= N:
        raise ValueError("need n >= 3 and 0 <= m <= N")
    t = gnm_tables(n)
    return CovarianceReport(n, "gnm", m, t.h[m], t.k[m], t.cov(m), t.relcov(m), "exact")


def critical_m(n: int) -> list[tuple[int, int]]:
    """Where m -> cov_gnm(n, m) changes sign.

    Returns pairs (m, m+1) with strictly opposite signs, and (m, m) for an
    exact zero at m >= 1 (m = 0 is always a trivial zero), in increasing
    order.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    t = gnm_tables(n)
    covs = [t.cov(m) for m in range(t.N + 1)]
    out = []
    for m in range(1, t.N + 1):
        if covs[m] == 0:
            out.append((m, m))
        elif m < t.N and covs[m] * covs[m + 1] < 0:
            out.append((m, m + 1))
    return out


def m_from_fraction(x, n: int) -> int:
    """Edge count nearest to x * N, ties to even."""
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise ValueError("fraction of N must lie in [0, 1]")
    return round(x * _N(n))
