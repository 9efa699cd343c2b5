"""Leading-order large-n formulas for fixed p in (0, 1].

Everything is evaluated with mpmath at a configurable precision (default
256 bits): (1 - p/2)**(2n) underflows doubles long before n gets
interesting, and the constants involve e**x so exact rationals buy nothing.

Notation: y = 1 - p/2 and x(p) = p(1-p)/(2-p)**2.  In G(n, m) the density
is p = m/N.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath

__all__ = [
    "DEFAULT_BITS",
    "AsymptoticReport",
    "RegimeWarning",
    "approx_not_reach",
    "approx_joint",
    "approx_cov",
    "limit_relcov_gnp",
    "limit_relcov_gnm",
    "pc_function",
    "solve_pc",
    "pc_derivative",
    "pc_monotonicity_check",
    "varcond_terms",
    "varcond_sum_residual",
    "approx_q",
    "asymptotic_report",
]

DEFAULT_BITS = 256


class RegimeWarning(UserWarning):
    """Formula evaluated outside the regime it was derived for."""


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, str) and "/" in x:
        a, b = x.split("/", 1)
        return mpmath.mpf(int(a)) / int(b)
    if hasattr(x, "numerator") and hasattr(x, "denominator") and not isinstance(x, float):
        return mpmath.mpf(int(x.numerator)) / int(x.denominator)
    return mpmath.mpf(x)


def _p(p):
    p = _mpf(p)
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]; the formulas fail at p = 0")
    return p


def _x(p):
    return p * (1 - p) / (2 - p) ** 2


def _model(model: str) -> str:
    if model not in ("gnp", "gnm"):
        raise ValueError(f"unknown model {model!r}")
    return model


def approx_not_reach(n: int, p, model: str = "gnp", bits: int = DEFAULT_BITS):
    """P(s does not reach a) to leading order."""
    _model(model)
    if n < 2:
        raise ValueError("need n >= 2")
    with mpmath.workprec(bits):
        p = _p(p)
        v = 2 * (1 - p / 2) ** (n - 1)
        if model == "gnm":
            v *= mpmath.exp(-_x(p))
        return +v


def approx_joint(n: int, p, model: str = "gnp", bits: int = DEFAULT_BITS):
    """P(s does not reach a, b does not reach s) to leading order."""
    _model(model)
    if n < 3:
        raise ValueError("need n >= 3")
    with mpmath.workprec(bits):
        p = _p(p)
        v = 3 * (1 - p / 2) ** (2 * n - 3)
        if model == "gnm":
            v *= mpmath.exp(-4 * _x(p))
        return +v


def approx_cov(n: int, p, model: str = "gnp", bits: int = DEFAULT_BITS):
    """Leading-order covariance.

    gnp: (2p - 1) y**(2n-3).
    gnm: (3 e**(-2x) - 4 + 2p) y**(2n-3) e**(-2x).
    """
    _model(model)
    if n < 3:
        raise ValueError("need n >= 3")
    with mpmath.workprec(bits):
        p = _p(p)
        base = (1 - p / 2) ** (2 * n - 3)
        if model == "gnp":
            return (2 * p - 1) * base
        e2 = mpmath.exp(-2 * _x(p))
        return (3 * e2 - 4 + 2 * p) * base * e2


def limit_relcov_gnp(p, bits: int = DEFAULT_BITS):
    with mpmath.workprec(bits):
        return (2 * _p(p) - 1) / 3


def limit_relcov_gnm(p, bits: int = DEFAULT_BITS):
    with mpmath.workprec(bits):
        p = _p(p)
        return (3 - (4 - 2 * p) * mpmath.exp(2 * _x(p))) / 3


def pc_function(p, bits: int = DEFAULT_BITS):
    """3 e**(-2x(p)) - 4 + 2p; its root in (0, 1) is the G(n, m) critical density."""
    with mpmath.workprec(bits):
        p = _mpf(p)
        return 3 * mpmath.exp(-2 * _x(p)) - 4 + 2 * p


def solve_pc(tol=Fraction(1, 10**12), bits: int = DEFAULT_BITS):
    """Bisection on [0, 1] (values -1 and 1 at the ends) down to width tol."""
    with mpmath.workprec(bits):
        tol = _mpf(tol)
        if tol <= 0:
            raise ValueError("tol must be positive")
        lo, hi = mpmath.mpf(0), mpmath.mpf(1)
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if pc_function(mid, bits) < 0:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


def pc_derivative(p, bits: int = DEFAULT_BITS):
    """d/dp of :func:`pc_function`, using x'(p) = (2 - 3p) / (2 - p)**3."""
    with mpmath.workprec(bits):
        p = _mpf(p)
        return 2 - 6 * (2 - 3 * p) * mpmath.exp(-2 * _x(p)) / (2 - p) ** 3


def pc_monotonicity_check(points: int = 1000, bits: int = DEFAULT_BITS) -> bool:
    """Sample the derivative of :func:`pc_function` on [0, 1]; True if all > 0."""
    return all(pc_derivative(mpmath.mpf(i) / points, bits) > 0 for i in range(points + 1))


def varcond_terms(n: int, p, bits: int = DEFAULT_BITS):
    """Leading terms of (E[Cov(A, B | M)], Var(P(A | M))) with M ~ Bin(N, p).

    E = e**(2x):  ((3 - (4 - 2p) E) y**(2n-3),  4 (E - 1) y**(2n-2)).
    """
    if n < 3:
        raise ValueError("need n >= 3")
    with mpmath.workprec(bits):
        p = _p(p)
        E = mpmath.exp(2 * _x(p))
        y = 1 - p / 2
        return (3 - (4 - 2 * p) * E) * y ** (2 * n - 3), 4 * (E - 1) * y ** (2 * n - 2)


def varcond_sum_residual(p, bits: int = DEFAULT_BITS):
    """(3 - (4-2p)E) + 4(E - 1)(1 - p/2) - (2p - 1); zero in exact arithmetic."""
    with mpmath.workprec(bits):
        p = _p(p)
        E = mpmath.exp(2 * _x(p))
        return (3 - (4 - 2 * p) * E) + 4 * (E - 1) * (1 - p / 2) - (2 * p - 1)


def approx_q(l: int, n: int, m: int, bits: int = DEFAULT_BITS):
    """y**l exp(-(l/n)**2 x(p)) with p = m/N; meant for l of order n."""
    N = n * (n - 1) // 2
    if not (0 <= l <= N and 0 <= m <= N):
        raise ValueError("need 0 <= l <= N and 0 <= m <= N")
    if l > 10 * n:
        warnings.warn(f"l = {l} is far beyond the l = O(n) regime", RegimeWarning, stacklevel=2)
    with mpmath.workprec(bits):
        p = mpmath.mpf(m) / N
        return (1 - p / 2) ** l * mpmath.exp(-(mpmath.mpf(l) / n) ** 2 * _x(p))


@dataclass(frozen=True)
class AsymptoticReport:
    n: int
    p: object
    model: str
    not_reach: object
    joint: object
    cov: object
    relcov_limit: object

    def __post_init__(self):
        for name in ("not_reach", "joint"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise ValueError(f"{name} = {v} is not a probability; n too small for this p")

    def to_dict(self, digits: int = 17) -> dict:
        return {
            "n": self.n,
            "p": mpmath.nstr(self.p, digits),
            "model": self.model,
            "not_reach": mpmath.nstr(self.not_reach, digits),
            "joint": mpmath.nstr(self.joint, digits),
            "cov": mpmath.nstr(self.cov, digits),
            "relcov_limit": mpmath.nstr(self.relcov_limit, digits),
        }


def asymptotic_report(n: int, p, model: str = "gnp", bits: int = DEFAULT_BITS) -> AsymptoticReport:
    with mpmath.workprec(bits):
        lim = limit_relcov_gnp(p, bits) if model == "gnp" else limit_relcov_gnm(p, bits)
        return AsymptoticReport(
            n, _p(p), _model(model), approx_not_reach(n, p, model, bits), approx_joint(n, p, model, bits),
            approx_cov(n, p, model, bits), lim)
