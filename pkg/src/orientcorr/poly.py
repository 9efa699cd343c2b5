"""Exact polynomials in the edge probability ``p``.

Coefficients are rationals, stored as a tuple of integer numerators over one
positive common denominator.  That keeps evaluation and multiplication on
plain integers; :class:`fractions.Fraction` only appears at the API edges.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

import gmpy2

Rational = Fraction

__all__ = [
    "Rational",
    "PolyP",
    "as_rational",
    "binomial",
    "derivative_at_zero",
    "poly_arith",
    "poly_eval",
    "rational_to_str",
    "rational_from_str",
]


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions, mpq-likes and ``"a/b"`` strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return rational_from_str(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or an 'a/b' string")
    num = getattr(x, "numerator", None)
    den = getattr(x, "denominator", None)
    if num is not None and den is not None:
        return Fraction(int(num), int(den))
    raise TypeError(f"cannot interpret {x!r} as a rational")


# gmpy2 converts without the interpreter's 4300-digit cap; exact results at
# n = 300 have numerators with tens of thousands of digits.

def rational_to_str(x: Fraction) -> str:
    x = as_rational(x)
    return f"{gmpy2.mpz(x.numerator)}/{gmpy2.mpz(x.denominator)}"


def rational_from_str(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        a, b = s.split("/", 1)
        return Fraction(int(gmpy2.mpz(a.strip())), int(gmpy2.mpz(b.strip())))
    return Fraction(s)


@lru_cache(maxsize=None)
def _binomial(n: int, k: int) -> int:
    return comb(n, k)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return _binomial(n, k)


def _trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _int_poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of integer coefficient lists by Kronecker substitution."""
    if not a or not b:
        return []
    if len(a) < 8 or len(b) < 8:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, z in enumerate(b):
                    out[i + j] += x * z
        return out
    bound = max(abs(x) for x in a) * max(abs(x) for x in b) * min(len(a), len(b))
    w = bound.bit_length() + 2
    pa = _pack(a, w)
    pb = _pack(b, w)
    return _unpack(pa * pb, w, len(a) + len(b) - 1)


def _pack(coeffs: Sequence[int], w: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = (v << w) + c
    return v


def _unpack(v: int, w: int, length: int) -> list[int]:
    """Balanced base-2**w digits of ``v`` (inverse of :func:`_pack`)."""
    mask = (1 << w) - 1
    half = 1 << (w - 1)
    full = 1 << w
    out = []
    for _ in range(length):
        r = v & mask
        if r >= half:
            r -= full
        out.append(r)
        v = (v - r) >> w
    if v != 0:
        raise ArithmeticError("packed polynomial overflowed its slot width")
    return out


class PolyP:
    """Dense polynomial in ``p`` with exact rational coefficients.

    Index ``i`` of :attr:`coefficients` is the coefficient of ``p**i``.
    Trailing zeros are trimmed, so the zero polynomial has no coefficients.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, coefficients: Iterable = ()):
        fracs = [as_rational(c) for c in coefficients]
        den = 1
        for c in fracs:
            den = den * c.denominator // gcd(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in fracs]
        self._set(nums, den)

    def _set(self, nums: list[int], den: int) -> None:
        nums = _trim(list(nums))
        if den < 0:
            nums = [-x for x in nums]
            den = -den
        g = den
        for x in nums:
            g = gcd(g, x)
            if g == 1:
                break
        if not nums:
            g = den
        if g > 1:
            nums = [x // g for x in nums]
            den //= g
        self._num = tuple(nums)
        self._den = den

    @classmethod
    def from_integers(cls, nums: Sequence[int], den: int = 1) -> "PolyP":
        """Polynomial with coefficients ``nums[i] / den``."""
        obj = cls.__new__(cls)
        obj._set([int(x) for x in nums], int(den))
        return obj

    @classmethod
    def from_half_p_integers(cls, nums: Sequence[int], den: int = 1) -> "PolyP":
        """Convert a polynomial in ``t = p/2`` with integer coefficients.

        ``nums[i] / den`` is the coefficient of ``t**i``; the coefficient of
        ``p**i`` is therefore ``nums[i] / (den * 2**i)``.
        """
        d = len(nums) - 1
        scaled = [int(c) << (d - i) for i, c in enumerate(nums)]
        return cls.from_integers(scaled, int(den) << max(d, 0))

    @classmethod
    def constant(cls, c) -> "PolyP":
        return cls([c])

    @classmethod
    def p(cls) -> "PolyP":
        return cls([0, 1])

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def degree(self) -> int:
        """Highest nonzero power; -1 for the zero polynomial."""
        return len(self._num) - 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._num):
            return Fraction(self._num[i], self._den)
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._num

    def __repr__(self) -> str:
        terms = [f"{c}*p^{i}" for i, c in enumerate(self.coefficients) if c]
        return "PolyP(" + (" + ".join(terms) if terms else "0") + ")"

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyP):
            return self._num == other._num and self._den == other._den
        try:
            return self == PolyP([as_rational(other)])
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def _coerce(self, other) -> "PolyP":
        if isinstance(other, PolyP):
            return other
        return PolyP([as_rational(other)])

    def __add__(self, other) -> "PolyP":
        other = self._coerce(other)
        den = self._den * other._den // gcd(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        n = max(len(self._num), len(other._num))
        a = self._num + (0,) * (n - len(self._num))
        b = other._num + (0,) * (n - len(other._num))
        return PolyP.from_integers([x * fa + z * fb for x, z in zip(a, b)], den)

    __radd__ = __add__

    def __neg__(self) -> "PolyP":
        return PolyP.from_integers([-x for x in self._num], self._den)

    def __sub__(self, other) -> "PolyP":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PolyP":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PolyP":
        if not isinstance(other, PolyP):
            c = as_rational(other)
            return PolyP.from_integers(
                [x * c.numerator for x in self._num], self._den * c.denominator
            )
        return PolyP.from_integers(_int_poly_mul(self._num, other._num), self._den * other._den)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PolyP":
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result = PolyP([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x) -> Fraction:
        return poly_eval(self, x)

    def eval_sign(self, x) -> int:
        """Sign of the value at rational ``x`` without building a Fraction."""
        x = as_rational(x)
        a, b = x.numerator, x.denominator
        acc = 0
        bp = 1
        for c in reversed(self._num):
            acc = acc * a + c * bp
            bp *= b
        # acc = sum c_i a^i b^(deg-i); the dropped denominators are positive
        return (acc > 0) - (acc < 0)

    def to_json(self) -> str:
        return json.dumps([rational_to_str(c) for c in self.coefficients])

    @classmethod
    def from_json(cls, s: str) -> "PolyP":
        return cls(rational_from_str(c) for c in json.loads(s))


def poly_arith(a: PolyP, b, op: str) -> PolyP:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` (b a Rational)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        if isinstance(b, PolyP):
            raise TypeError("scale expects a rational factor")
        return a * as_rational(b)
    raise ValueError(f"unknown polynomial op {op!r}")


def poly_eval(a: PolyP, x) -> Fraction:
    """Exact Horner evaluation at a rational point."""
    x = as_rational(x)
    num = a.numerators
    if not num:
        return Fraction(0)
    xa, xb = x.numerator, x.denominator
    acc = 0
    bp = 1
    for c in reversed(num):
        acc = acc * xa + c * bp
        bp *= xb
    # bp ended as xb**(deg+1); the value is acc / (den * xb**deg)
    return Fraction(acc, a.denominator * (bp // xb))


def derivative_at_zero(a: PolyP, order: int) -> Fraction:
    """``order``-th derivative at ``p = 0``, i.e. ``order! * coeff(order)``."""
    if order < 0:
        raise ValueError("derivative order must be non-negative")
    c = a.coeff(order)
    if not c:
        return Fraction(0)
    f = 1
    for i in range(2, order + 1):
        f *= i
    return c * f
