"""Computations behind the CLI: curves, zero tables, decompositions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import asymptotics
from .gnm import gnm_tables
from .gnp import SYMBOLIC, Backend, cov_gnp, cov_poly, critical_ps, f_poly, g_poly
from .montecarlo import Model, estimate_quenched
from .oracle import QUENCHED_MAX_N, oracle_cross_term, oracle_quenched, oracle_quenched_gnm
from .poly import as_rational, binomial, poly_eval
from .roots import DEFAULT_GRID, Root, find_sign_changes

DEFAULT_TOL = Fraction(1, 10**6)


class IdentityViolation(ArithmeticError):
    pass


def p_grid(points: int) -> list[Fraction]:
    """i/points for i = 1..points: a uniform grid on (0, 1]."""
    if points < 1:
        raise ValueError("grid needs at least one point")
    return [Fraction(i, points) for i in range(1, points + 1)]


def normalizer(n: int, p) -> Fraction:
    """3 (1 - p/2)**(2n-3), the scale of P(A and B) for large n."""
    return 3 * (1 - as_rational(p) / 2) ** (2 * n - 3)


def curve_rows(n: int, grid: list[Fraction], backend: Backend = SYMBOLIC, *,
               allow_large: bool = False, long_running: bool = False, progress=None) -> list[dict]:
    rows = []
    if backend.mode == "symbolic":
        f, g = f_poly(n, allow_large=allow_large), g_poly(n, allow_large=allow_large)
        for p in grid:
            fv, gv = poly_eval(f, p), poly_eval(g, p)
            rows.append(_curve_row(n, p, fv, gv))
    else:
        for p in grid:
            r = cov_gnp(n, p, Backend(backend.mode, p, backend.precision_bits),
                        allow_large=allow_large, long_running=long_running, progress=progress)
            rows.append(_curve_row(n, p, r.p_a, r.p_ab))
    return rows


def _curve_row(n, p, f, g) -> dict:
    cov = g - f * f
    return {
        "n": n,
        "p": p,
        "f": f,
        "g": g,
        "cov": cov,
        "relcov": cov / g if g else None,
        "normalized_cov": cov / normalizer(n, p) if isinstance(cov, Fraction) else None,
        "asymptote": (2 * p - 1) / 3,
    }


@dataclass
class ZeroRow:
    n: int
    annealed: list[Root]
    quenched: list[Root] | None

    def to_dict(self) -> dict:
        out = {"n": self.n, "zeros": len(self.annealed)}
        for i in range(3):
            r = self.annealed[i] if i < len(self.annealed) else None
            out[f"p{i + 1}"] = float(r.value) if r else None
        for i in range(2):
            r = self.annealed[i] if i < len(self.annealed) else None
            out[f"n_p{i + 1}"] = self.n * float(r.value) if r else None
        out["endpoint_zero"] = any(r.exact and r.value == 1 for r in self.annealed)
        if self.quenched is not None:
            out["quenched_zeros"] = len(self.quenched)
            out["quenched_p"] = float(self.quenched[0].value) if self.quenched else None
        return out


def quenched_zeros(n: int, tol=DEFAULT_TOL, grid_points: int = DEFAULT_GRID,
                   long_running: bool = False) -> list[Root]:
    q = oracle_quenched(n, long_running=long_running)
    return find_sign_changes(lambda x: poly_eval(q, x), (0, 1), grid_points, tol, open_lo=True)


def zero_rows(ns, tol=DEFAULT_TOL, grid_points: int = DEFAULT_GRID, backend: Backend = SYMBOLIC,
              quenched: bool = True, long_running: bool = False) -> list[ZeroRow]:
    out = []
    for n in ns:
        ann = critical_ps(n, tol, grid_points, backend)
        qz = None
        if quenched and (n <= QUENCHED_MAX_N or (long_running and n <= 7)):
            qz = quenched_zeros(n, tol, grid_points, long_running)
        out.append(ZeroRow(n, ann, qz))
    return out


def binomial_weights(N: int, p: Fraction) -> list[Fraction]:
    q = 1 - p
    return [binomial(N, m) * p**m * q ** (N - m) for m in range(N + 1)]


@dataclass
class Decomposition:
    n: int
    p: Fraction
    annealed_cov: Fraction
    expected_gnm_cov: Fraction
    var_conditional: Fraction
    asym_expected_gnm_cov: object = None
    asym_var_conditional: object = None
    asym_cov: object = None

    def normalized(self) -> dict:
        z = normalizer(self.n, self.p)
        out = {
            "annealed_cov_norm": self.annealed_cov / z,
            "expected_gnm_cov_norm": self.expected_gnm_cov / z,
            "var_conditional_norm": self.var_conditional / z,
        }
        if self.asym_cov is not None:
            zf = mpmath.mpf(z.numerator) / z.denominator
            out["asym_cov_norm"] = self.asym_cov / zf
            out["asym_expected_gnm_cov_norm"] = self.asym_expected_gnm_cov / zf
            out["asym_var_conditional_norm"] = self.asym_var_conditional / zf
        return out

    def to_row(self) -> dict:
        row = {
            "n": self.n,
            "p": self.p,
            "annealed_cov": self.annealed_cov,
            "expected_gnm_cov": self.expected_gnm_cov,
            "var_conditional": self.var_conditional,
        }
        row.update(self.normalized())
        return row


def decompose(n: int, p) -> Decomposition:
    """Split the G(n, p) covariance by conditioning on the edge count M.

    Cov = E[Cov(A, B | M)] + Var(P(A | M)), every term exact.  Raises
    :class:`IdentityViolation` if the parts do not add up.
    """
    p = as_rational(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    t = gnm_tables(n)
    w = binomial_weights(t.N, p)
    e_cov = sum(wi * t.cov(m) for m, wi in enumerate(w))
    mean_h = sum(wi * t.h[m] for m, wi in enumerate(w))
    var_h = sum(wi * t.h[m] ** 2 for m, wi in enumerate(w)) - mean_h**2
    ann = cov_gnp(n, p, SYMBOLIC).cov
    if ann != e_cov + var_h:
        raise IdentityViolation(f"decomposition fails at n={n}, p={p}")
    d = Decomposition(n, p, ann, e_cov, var_h)
    if p > 0:
        ec, vc = asymptotics.varcond_terms(n, p)
        d.asym_expected_gnm_cov = ec
        d.asym_var_conditional = vc
        d.asym_cov = asymptotics.approx_cov(n, p, "gnp")
    return d


def quenched_curves(n: int, grid: list[Fraction], long_running: bool = False) -> dict:
    """Annealed and quenched covariance of G(n, p) on a grid, plus quenched G(n, m) points.

    Returns rows for both and the largest distance between a G(n, m) point
    and the G(n, p) curve at p = m/N.
    """
    ann = cov_poly(n) if n <= 40 else None
    q = oracle_quenched(n, long_running=long_running)
    cross = oracle_cross_term(n, long_running=long_running)
    rows = []
    for p in grid:
        rows.append({
            "n": n,
            "p": p,
            "annealed_cov": poly_eval(ann, p),
            "quenched_cov": poly_eval(q, p),
            "cross_term": poly_eval(cross, p),
        })
    qm = oracle_quenched_gnm(n, long_running=long_running)
    N = n * (n - 1) // 2
    mrows = []
    gap = Fraction(0)
    for m, v in enumerate(qm):
        curve_v = poly_eval(q, Fraction(m, N))
        gap = max(gap, abs(v - curve_v))
        mrows.append({"n": n, "m": m, "p": Fraction(m, N), "quenched_gnm_cov": v,
                      "quenched_gnp_cov": curve_v})
    return {"gnp": rows, "gnm": mrows, "max_gap": gap}


@dataclass
class MCZero:
    root: float
    se: float
    points: list

    def to_dict(self) -> dict:
        return {"root": self.root, "se": self.se,
                "points": [{"p": p, "cov": c, "se": s} for p, c, s in self.points]}


def mc_quenched_zero(n: int, lo: float, hi: float, points: int, trials: int, seed: int,
                     streams: int = 8, workers: int = 1) -> MCZero:
    """Locate the quenched zero by a weighted straight-line fit to MC estimates.

    All grid points use the same seed, so they share random numbers and the
    fitted line is far less noisy than the individual estimates.  The
    reported s.e. treats the points as independent and is conservative.
    """
    if points < 2:
        raise ValueError("need at least two grid points")
    pts = []
    for i in range(points):
        p = lo + (hi - lo) * i / (points - 1)
        r = estimate_quenched(n, Model.gnp(p), trials, seed, streams, workers)
        pts.append((p, r.cov, r.se_cov))
    W = [1 / s**2 if s > 0 else 1.0 for _, _, s in pts]
    sw = sum(W)
    mx = sum(w * p for w, (p, _, _) in zip(W, pts)) / sw
    my = sum(w * c for w, (_, c, _) in zip(W, pts)) / sw
    sxx = sum(w * (p - mx) ** 2 for w, (p, _, _) in zip(W, pts))
    sxy = sum(w * (p - mx) * (c - my) for w, (p, c, _) in zip(W, pts))
    b = sxy / sxx
    a = my - b * mx
    root = -a / b
    # delta method on root = mx - my/b with var(my) = 1/sw, var(b) = 1/sxx
    se = math.sqrt((1 / sw) / b**2 + (my**2 / b**4) / sxx)
    return MCZero(root, se, pts)
