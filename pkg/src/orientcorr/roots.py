"""Sign-change scanning and bisection on exactly evaluable functions."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .poly import as_rational

__all__ = ["Bracket", "Root", "GridResolutionWarning", "find_sign_changes", "DEFAULT_GRID"]

DEFAULT_GRID = 2048


class GridResolutionWarning(UserWarning):
    """A grid cell may hide an even number of roots."""


def _sign(v) -> int:
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class Bracket:
    lo: Fraction
    hi: Fraction
    sign_lo: int
    sign_hi: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("bracket needs lo < hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class Root:
    """A located zero.

    ``exact`` roots were hit on a grid node and have zero width; the others
    are bracket midpoints with ``width`` the final bracket width.
    """

    value: Fraction
    width: Fraction
    exact: bool
    bracket: Bracket | None = None

    def __float__(self) -> float:
        return float(self.value)


def _bisect(f, lo, hi, s_lo, s_hi, tol) -> Root:
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = _sign(f(mid))
        if s == 0:
            return Root(mid, Fraction(0), True)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return Root((lo + hi) / 2, hi - lo, False, Bracket(lo, hi, s_lo, s_hi))


def find_sign_changes(
    f: Callable[[Fraction], object],
    interval: tuple = (0, 1),
    grid_points: int = DEFAULT_GRID,
    tol=Fraction(1, 10**6),
    *,
    open_lo: bool = False,
    open_hi: bool = False,
) -> list[Root]:
    """Scan a uniform rational grid for sign changes and refine each one.

    Nodes are ``lo + i*(hi-lo)/grid_points`` for ``i = 0..grid_points``,
    minus the endpoints flagged open.  Every node where ``f`` vanishes is
    reported as an exact root; every adjacent pair of nonzero nodes with
    opposite signs is bisected down to width ``tol``.  Only the sign of
    ``f`` is used, so any exactly evaluated return type works.

    A node whose |f| is much smaller than both neighbours without a sign
    change raises :class:`GridResolutionWarning`: a root pair may sit inside
    one cell and the caller should raise ``grid_points``.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    lo, hi = as_rational(interval[0]), as_rational(interval[1])
    tol = as_rational(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not lo < hi:
        raise ValueError("empty interval")
    step = (hi - lo) / grid_points
    first = 1 if open_lo else 0
    last = grid_points - 1 if open_hi else grid_points
    xs = [lo + i * step for i in range(first, last + 1)]
    vals = [f(x) for x in xs]
    signs = [_sign(v) for v in vals]

    roots: list[Root] = []
    for i, (x, s) in enumerate(zip(xs, signs)):
        if s == 0:
            roots.append(Root(x, Fraction(0), True))
        elif i > 0 and signs[i - 1] != 0 and signs[i - 1] != s:
            roots.append(_bisect(f, xs[i - 1], x, signs[i - 1], s, tol))

    suspicious = []
    for i in range(1, len(xs) - 1):
        s = signs[i]
        if s == 0 or signs[i - 1] != s or signs[i + 1] != s:
            continue
        if 4 * abs(vals[i]) < min(abs(vals[i - 1]), abs(vals[i + 1])):
            suspicious.append(xs[i])
    if suspicious:
        shown = ", ".join(f"{float(x):.6g}" for x in suspicious[:5])
        warnings.warn(
            f"near-tangent minimum of |f| without a sign change at {shown}; "
            "a root pair may be unresolved, raise grid_points",
            GridResolutionWarning,
            stacklevel=2,
        )
    return roots
