"""Result records shared by the exact, asymptotic and sampling modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .poly import rational_to_str

PROVENANCES = ("exact", "float", "asymptotic", "monte-carlo")


def to_decimal(x, digits: int = 17) -> str:
    """Decimal string for a Fraction, mpq, mpfr, mpf or float value."""
    if x is None:
        return ""
    if isinstance(x, Fraction) or hasattr(x, "denominator"):
        num, den = int(x.numerator), int(x.denominator)
        with mpmath.workprec(max(64, 4 * digits + 64 + abs(num.bit_length() - den.bit_length()))):
            return mpmath.nstr(mpmath.mpf(num) / den, digits, min_fixed=-4, max_fixed=6)
    with mpmath.workprec(max(64, 4 * digits + 64)):
        return mpmath.nstr(mpmath.mpf(str(x)) if not isinstance(x, float) else mpmath.mpf(x),
                           digits, min_fixed=-4, max_fixed=6)


def _exact_str(x):
    if isinstance(x, Fraction):
        return rational_to_str(x)
    return None


@dataclass(frozen=True)
class CovarianceReport:
    """Covariance of A = {a does not reach s} and B = {s does not reach b}.

    ``parameter`` is the edge probability p (model ``gnp``) or the edge
    count m (model ``gnm``).  By symmetry P(B) = P(A), so only P(A) is kept.
    ``stderr`` is set for Monte-Carlo reports only.
    """

    n: int
    model: str
    parameter: object
    p_a: object
    p_ab: object
    cov: object
    relcov: object | None
    provenance: str = "exact"
    stderr: float | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.model not in ("gnp", "gnm"):
            raise ValueError(f"unknown model {self.model!r}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def to_dict(self, digits: int = 17) -> dict:
        out = {
            "n": self.n,
            "model": self.model,
            "parameter": rational_to_str(self.parameter) if isinstance(self.parameter, Fraction)
            else self.parameter,
            "provenance": self.provenance,
        }
        for name in ("p_a", "p_ab", "cov", "relcov"):
            v = getattr(self, name)
            out[name] = to_decimal(v, digits)
            ex = _exact_str(v)
            if ex is not None:
                out[name + "_exact"] = ex
        if self.stderr is not None:
            out["stderr"] = self.stderr
        out.update(self.extra)
        return out
