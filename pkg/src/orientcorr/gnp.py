"""Exact P(s does not reach b) and P(a does not reach s, s does not reach b)
in a randomly oriented G(n, p).

Three backends share one recursion engine:

``symbolic``
    exact polynomials in p.  Internally every polynomial is an integer
    polynomial in t = p/2 (y = 1 - t, q = 1 - 2t), packed into a single big
    integer by evaluating it at 2**w.  Ring operations on the packed form
    are plain big-integer operations, which is what makes n = 30 cheap.
``numeric``
    exact rationals at a fixed rational p.  Small n runs the recursion in
    ``gmpy2.mpq``; larger n switches to multi-modular reconstruction.
``float``
    the same recursion in ``gmpy2.mpfr`` with a configurable mantissa.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import gmpy2

from ._engine import ClusterEngine
from .modular import gnp_exact_modular
from .poly import PolyP, _unpack, as_rational, poly_eval
from .report import CovarianceReport
from .roots import DEFAULT_GRID, Root, find_sign_changes

__all__ = [
    "Backend",
    "SYMBOLIC",
    "ClusterTables",
    "SizeGuardError",
    "d_full",
    "d",
    "M",
    "f_poly",
    "g_poly",
    "cov_poly",
    "cov_gnp",
    "critical_ps",
]

SYMBOLIC_MAX_N = 40
NUMERIC_MAX_N = 400
# above this the numeric backend stops holding mpq tables and goes modular
NUMERIC_DIRECT_MAX_N = 60
# modular runs past this size take minutes to hours
LONG_RUNNING_N = 120
DEFAULT_FLOAT_BITS = 2560


class SizeGuardError(ValueError):
    """Request exceeds a default size guard; pass ``allow_large=True``."""


@dataclass(frozen=True)
class Backend:
    mode: str = "symbolic"
    p: Fraction | None = None
    precision_bits: int = DEFAULT_FLOAT_BITS

    def __post_init__(self):
        if self.mode not in ("symbolic", "numeric", "float"):
            raise ValueError(f"unknown backend {self.mode!r}")
        if self.mode == "symbolic":
            if self.p is not None:
                raise ValueError("the symbolic backend takes no p")
            return
        if self.p is None:
            raise ValueError(f"the {self.mode} backend needs p")
        p = as_rational(self.p)
        object.__setattr__(self, "p", p)
        if not 0 <= p <= 1:
            raise ValueError("p must lie in [0, 1]")
        if self.precision_bits < 53:
            raise ValueError("precision_bits must be at least 53")

    @classmethod
    def numeric(cls, p) -> "Backend":
        return cls("numeric", as_rational(p))

    @classmethod
    def float(cls, p, precision_bits: int = DEFAULT_FLOAT_BITS) -> "Backend":
        return cls("float", as_rational(p), precision_bits)

    def key(self):
        if self.mode == "symbolic":
            return ("symbolic",)
        if self.mode == "numeric":
            return ("numeric", self.p)
        return ("float", self.p, self.precision_bits)


SYMBOLIC = Backend()


def _slot_width(n: int) -> int:
    # every stored value is a combination of probability polynomials whose
    # t-coefficients are bounded by 5**N; the slack covers the binomial and
    # (n-1)(n-2) multipliers in the weighted sums
    N = n * (n - 1) // 2
    return int(N * math.log2(5)) + 2 * n.bit_length() + 16


class ClusterTables:
    """Memoized out-cluster and joint-cluster tables for one backend.

    Values come out as :class:`PolyP` (symbolic), ``Fraction`` (numeric) or
    ``gmpy2.mpfr`` (float).  Tables grow on demand; growth and reads are
    serialized by a lock.
    """

    def __init__(self, backend: Backend, n_max: int, progress: Callable | None = None):
        self.backend = backend
        self.n_max = n_max
        self._lock = threading.RLock()
        mode = backend.mode
        if mode == "symbolic":
            self.width = _slot_width(n_max)
            X = gmpy2.mpz(1) << self.width
            self.engine = ClusterEngine(gmpy2.mpz(1), 1 - X, 1 - 2 * X, n_max, progress)
        elif mode == "numeric":
            p = gmpy2.mpq(backend.p.numerator, backend.p.denominator)
            self.engine = ClusterEngine(gmpy2.mpq(1), 1 - p / 2, 1 - p, n_max, progress)
        else:
            self.ctx = gmpy2.context(precision=backend.precision_bits)
            with gmpy2.context(self.ctx):
                p = gmpy2.mpfr(backend.p.numerator) / backend.p.denominator
                one = gmpy2.mpfr(1)
                self.engine = ClusterEngine(one, one - p / 2, one - p, n_max, progress)

    def _run(self, fn):
        with self._lock:
            if self.backend.mode == "float":
                with gmpy2.context(self.ctx):
                    return fn()
            return fn()

    def _out(self, v, n_deg: int, den: int = 1):
        mode = self.backend.mode
        if mode == "symbolic":
            N = n_deg * (n_deg - 1) // 2
            coeffs = _unpack(int(v), self.width, N + 1)
            return PolyP.from_half_p_integers(coeffs, den)
        if mode == "numeric":
            return Fraction(int(v.numerator), int(v.denominator) * den)
        return v / den

    def d_full(self, k: int):
        return self._run(lambda: self._out(self.engine.d_full(k), max(k, 1)))

    def d(self, n: int, k: int):
        def go():
            return self._out(self.engine.d_full(k) * self.engine.ypow(k * (n - k)), n)
        return self._run(go)

    def M(self, n: int, k: int, m: int, r: int = 0):
        return self._run(lambda: self._out(self.engine.Mr(n, k, m, r), n))

    def f(self, n: int):
        return self._run(lambda: self._out(self.engine.f(n), n))

    def g(self, n: int):
        return self._run(lambda: self._out(self.engine.g_weighted(n), n, (n - 1) * (n - 2)))


_TABLES: dict = {}
_TABLES_LOCK = threading.Lock()


def _check_size(n: int, backend: Backend, allow_large: bool) -> None:
    if allow_large:
        return
    if backend.mode == "symbolic" and n > SYMBOLIC_MAX_N:
        raise SizeGuardError(f"symbolic backend refuses n > {SYMBOLIC_MAX_N} without allow_large")
    if backend.mode != "symbolic" and n > NUMERIC_MAX_N:
        raise SizeGuardError(f"{backend.mode} backend refuses n > {NUMERIC_MAX_N} without allow_large")


def tables(n: int, backend: Backend = SYMBOLIC, allow_large: bool = False,
           progress: Callable | None = None) -> ClusterTables:
    """Shared table able to answer queries up to ``n``."""
    _check_size(n, backend, allow_large)
    key = backend.key()
    with _TABLES_LOCK:
        t = _TABLES.get(key)
        if t is not None and t.n_max >= n:
            return t
        if backend.mode == "symbolic":
            # one slot width serves every n up to the cap, so ask for the
            # usual working range up front instead of rebuilding repeatedly
            cap = max(n, 30) if n <= 30 else n
        else:
            cap = max(n, 2 * t.n_max) if t is not None else max(n, 16)
            if n <= NUMERIC_DIRECT_MAX_N:
                cap = min(cap, NUMERIC_DIRECT_MAX_N)
        t = ClusterTables(backend, cap, progress)
        _TABLES[key] = t
        return t


def clear_tables() -> None:
    with _TABLES_LOCK:
        _TABLES.clear()


def d_full(k: int, backend: Backend = SYMBOLIC):
    """P(the out-cluster of a vertex is everything) on k vertices."""
    if k < 1:
        raise ValueError("need k >= 1")
    return tables(k, backend).d_full(k)


def d(n: int, k: int, backend: Backend = SYMBOLIC):
    """P(the out-cluster of s equals a fixed k-set containing s) on n vertices."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return tables(n, backend).d(n, k)


def M(n: int, k: int, m: int, r: int = 0, backend: Backend = SYMBOLIC):
    """P(out-cluster of s = X, in-cluster of s = Y) for fixed X, Y.

    |X| = k, |Y| = m, and r = n - |X u Y| vertices lie in neither.
    """
    if k < 1 or m < 1 or r < 0:
        raise ValueError("need k, m >= 1 and r >= 0")
    nr = n - r
    if not (k + m > nr and nr >= k and nr >= m):
        raise ValueError(f"inadmissible index tuple (n={n}, k={k}, m={m}, r={r})")
    return tables(nr, backend).M(n, k, m, r)


def f_poly(n: int, backend: Backend = SYMBOLIC, allow_large: bool = False):
    """P(s does not reach b)."""
    if n < 2:
        raise ValueError("need n >= 2")
    if backend.mode == "numeric" and n > NUMERIC_DIRECT_MAX_N:
        return _modular(n, backend.p, allow_large)[0]
    return tables(n, backend, allow_large).f(n)


def g_poly(n: int, backend: Backend = SYMBOLIC, allow_large: bool = False):
    """P(a does not reach s and s does not reach b)."""
    if n < 3:
        raise ValueError("need n >= 3")
    if backend.mode == "numeric" and n > NUMERIC_DIRECT_MAX_N:
        return _modular(n, backend.p, allow_large)[1]
    return tables(n, backend, allow_large).g(n)


def cov_poly(n: int, allow_large: bool = False) -> PolyP:
    """g_n - f_n**2 as an exact polynomial in p."""
    f = f_poly(n, SYMBOLIC, allow_large)
    return g_poly(n, SYMBOLIC, allow_large) - f * f


_MODULAR_CACHE: dict = {}


def _modular(n: int, p: Fraction, allow_large: bool = False, long_running: bool = False,
             progress: Callable | None = None):
    if n > NUMERIC_MAX_N and not allow_large:
        raise SizeGuardError(f"numeric backend refuses n > {NUMERIC_MAX_N} without allow_large")
    if n > LONG_RUNNING_N and not long_running:
        raise SizeGuardError(
            f"exact numeric n = {n} takes a long time; pass long_running=True (CLI: --long-run)")
    key = (n, p)
    if key not in _MODULAR_CACHE:
        _MODULAR_CACHE[key] = gnp_exact_modular(n, p, progress)
    return _MODULAR_CACHE[key]


def _report(n, p, f, g, provenance) -> CovarianceReport:
    cov = g - f * f
    relcov = cov / g if g != 0 else None
    return CovarianceReport(n, "gnp", p, f, g, cov, relcov, provenance)


def cov_gnp(n: int, p, backend: Backend | None = None, *, allow_large: bool = False,
            long_running: bool = False, progress: Callable | None = None) -> CovarianceReport:
    """Covariance report for A = {a does not reach s}, B = {s does not reach b}.

    ``backend`` defaults to exact numeric at ``p``.  A symbolic backend
    evaluates the exact polynomials at ``p``.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    p = as_rational(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if backend is None:
        backend = Backend.numeric(p)
    elif backend.mode != "symbolic" and backend.p != p:
        backend = Backend(backend.mode, p, backend.precision_bits)
    if backend.mode == "symbolic":
        t = tables(n, backend, allow_large)
        return _report(n, p, poly_eval(t.f(n), p), poly_eval(t.g(n), p), "exact")
    if backend.mode == "numeric":
        if n > NUMERIC_DIRECT_MAX_N:
            f, g = _modular(n, p, allow_large, long_running, progress)
        else:
            t = tables(n, backend, allow_large, progress)
            f, g = t.f(n), t.g(n)
        return _report(n, p, f, g, "exact")
    t = tables(n, backend, allow_large, progress)
    with gmpy2.context(t.ctx):
        f, g = t.f(n), t.g(n)
        return _report(n, p, f, g, "float")


def critical_ps(n: int, tol=Fraction(1, 10**6), grid_points: int = DEFAULT_GRID,
                backend: Backend = SYMBOLIC, allow_large: bool = False) -> list[Root]:
    """Sign changes of p -> cov_gnp(n, p) on (0, 1], refined to width tol.

    The symbolic backend scans the exact covariance polynomial; the numeric
    backend recomputes the tables at every grid point and is much slower.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if backend.mode == "symbolic":
        c = cov_poly(n, allow_large)

        def fn(x):
            return poly_eval(c, x)
    elif backend.mode == "numeric":
        def fn(x):
            x = as_rational(x)
            t = ClusterTables(Backend.numeric(x), n)
            f = t.f(n)
            return t.g(n) - f * f
    else:
        raise ValueError("critical_ps needs an exact backend")
    return find_sign_changes(fn, (0, 1), grid_points, tol, open_lo=True)
