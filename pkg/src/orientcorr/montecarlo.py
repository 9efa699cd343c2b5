"""Seeded Monte-Carlo estimates for randomly oriented G(n, p) and G(n, m).

Randomness comes from a counter-based generator: draw k of a stream with
key K is splitmix64's finalizer applied to K + k * golden.  Stream keys are
derived from (seed, stream index), trials are dealt to streams in fixed
contiguous blocks, and only integer counts are merged, so a result depends
on (seed, streams, trials) and nothing else: not on worker count, not on
scheduling, not on whether the compiled kernels are present.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from . import kernels
from ._purekernels import GOLDEN, MASK64, _Stream, mix64
from ._purekernels import _reaches as _reaches_list

__all__ = [
    "Model",
    "OrientedGraph",
    "CounterRNG",
    "SimResult",
    "reaches",
    "sample_oriented",
    "estimate_annealed",
    "estimate_quenched",
]


@dataclass(frozen=True)
class Model:
    """``Model.gnp(p)`` or ``Model.gnm(m)``."""

    kind: str
    p: float | None = None
    m: int | None = None

    def __post_init__(self):
        if self.kind == "gnp":
            if self.p is None or not 0.0 <= float(self.p) <= 1.0:
                raise ValueError("gnp needs 0 <= p <= 1")
            object.__setattr__(self, "p", float(self.p))
        elif self.kind == "gnm":
            if self.m is None or self.m < 0:
                raise ValueError("gnm needs m >= 0")
        else:
            raise ValueError(f"unknown model {self.kind!r}")

    @classmethod
    def gnp(cls, p) -> "Model":
        return cls("gnp", p=float(p))

    @classmethod
    def gnm(cls, m: int) -> "Model":
        return cls("gnm", m=int(m))

    def check(self, n: int) -> None:
        if n < 3 or n > 64:
            raise ValueError("samplers support 3 <= n <= 64")
        if self.kind == "gnm" and self.m > n * (n - 1) // 2:
            raise ValueError("m exceeds the number of vertex pairs")

    def describe(self) -> dict:
        return {"model": self.kind, "p": self.p} if self.kind == "gnp" else {"model": self.kind, "m": self.m}


class OrientedGraph:
    """Digraph on vertices 0..n-1 with at most one arc per pair.

    ``out[v]`` is a bitmask of the out-neighbours of v.
    """

    __slots__ = ("n", "out")

    def __init__(self, n: int, out=None):
        self.n = n
        self.out = list(out) if out is not None else [0] * n
        if len(self.out) != n:
            raise ValueError("need one out-mask per vertex")
        for v, mask in enumerate(self.out):
            if mask >> v & 1:
                raise ValueError("self-loop")
            if mask >> n:
                raise ValueError("arc to a vertex outside the graph")
        for u in range(n):
            for v in range(u + 1, n):
                if self.out[u] >> v & 1 and self.out[v] >> u & 1:
                    raise ValueError("both orientations of one pair")

    @classmethod
    def from_arcs(cls, n: int, arcs) -> "OrientedGraph":
        out = [0] * n
        for u, v in arcs:
            out[u] |= 1 << v
        return cls(n, out)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(self.n) if self.out[u] >> v & 1]

    @property
    def edge_count(self) -> int:
        return sum(bin(m).count("1") for m in self.out)

    def reaches(self, u: int, v: int) -> bool:
        return reaches(self, u, v)

    def __repr__(self) -> str:
        return f"OrientedGraph(n={self.n}, arcs={self.arcs()})"


def reaches(g: OrientedGraph, u: int, v: int) -> bool:
    """Is there a directed path from u to v?  A vertex reaches itself."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError("vertex out of range")
    return _reaches_list(g.out, u, v)


def stream_key(seed: int, index: int) -> int:
    return mix64((seed & MASK64) ^ mix64(((index + 1) * GOLDEN) & MASK64))


class CounterRNG:
    """Splittable counter-based generator; ``stream(i)`` is independent of the others."""

    def __init__(self, seed: int, index: int = 0):
        self.seed = seed & MASK64
        self.index = index
        self._s = _Stream(stream_key(seed, index))

    def stream(self, index: int) -> "CounterRNG":
        return CounterRNG(self.seed, index)

    @property
    def key(self) -> int:
        return self._s.key

    @property
    def counter(self) -> int:
        return self._s.ctr

    def next64(self) -> int:
        return self._s.next()

    def uniform(self) -> float:
        return self._s.uniform()


def sample_oriented(n: int, model: Model, rng: CounterRNG) -> OrientedGraph:
    """One draw; consumes the stream exactly as the annealed kernels do."""
    from ._purekernels import _orient, _pairs, _sample_gnp, _select_gnm

    model.check(n)
    out = [0] * n
    if model.kind == "gnp":
        _sample_gnp(n, model.p, rng._s, out)
    else:
        pairs = _pairs(n)
        perm = [0] * len(pairs)
        _select_gnm(len(pairs), model.m, rng._s, perm)
        _orient([pairs[perm[i]] for i in range(model.m)], rng._s, out, n)
    return OrientedGraph(n, out)


@dataclass
class SimResult:
    """Monte-Carlo estimates for A = {a does not reach s}, B = {s does not reach b}."""

    n: int
    model: dict
    estimator: str
    trials: int
    seed: int
    stream_count: int
    p_a: float
    p_b: float
    p_ab: float
    cov: float
    se_p_a: float
    se_p_b: float
    se_p_ab: float
    se_cov: float
    counts: dict = field(default_factory=dict)
    kernel: str = kernels.BACKEND_NAME

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def z_score(self, exact) -> float:
        exact = float(exact)
        if self.se_cov == 0:
            return 0.0 if self.cov == exact else math.inf
        return (self.cov - exact) / self.se_cov


def _blocks(trials: int, streams: int) -> list[int]:
    base, extra = divmod(trials, streams)
    return [base + (1 if i < extra else 0) for i in range(streams)]


def _fan_out(fn, n, model, trials, seed, streams, workers):
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if streams < 1:
        raise ValueError("streams must be >= 1")
    model.check(n)
    gnm = model.kind == "gnm"
    p = model.p if not gnm else 0.0
    m = model.m if gnm else 0
    jobs = [(stream_key(seed, i), t) for i, t in enumerate(_blocks(trials, streams)) if t]

    def run(job):
        key, t = job
        return fn(n, gnm, p, m, key, t)

    if workers > 1 and len(jobs) > 1:
        # the compiled kernels release the GIL
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    return [sum(col) for col in zip(*parts)]


def _cov_influence_var(c11, c10, c01, c00, smooth: float) -> float:
    """Delta-method variance of the covariance estimate from 2x2 cell counts.

    The influence of one trial with indicators (A, B) is
    (A - pA)(B - pB) - cov.  ``smooth`` is added to each cell before the
    variance is formed so that degenerate tables (a rare event never
    observed) still get an honest, nonzero error bar.
    """
    cells = [(1, 1, c11), (1, 0, c10), (0, 1, c01), (0, 0, c00)]
    tot = c11 + c10 + c01 + c00 + 4 * smooth
    pi = {(a, b): (c + smooth) / tot for a, b, c in cells}
    pa = pi[1, 1] + pi[1, 0]
    pb = pi[1, 1] + pi[0, 1]
    cov = pi[1, 1] - pa * pb
    return sum(w * ((a - pa) * (b - pb) - cov) ** 2 for (a, b), w in pi.items())


def _jackknife_cov_var(c11, c10, c01, c00) -> float:
    T = c11 + c10 + c01 + c00
    if T < 3:
        return math.inf

    def est(x11, x10, x01, x00):
        t = x11 + x10 + x01 + x00
        pa = (x11 + x10) / t
        pb = (x11 + x01) / t
        return t / (t - 1) * (x11 / t - pa * pb)

    vals = []
    for idx, cnt in enumerate((c11, c10, c01, c00)):
        if cnt:
            cs = [c11, c10, c01, c00]
            cs[idx] -= 1
            vals.append((est(*cs), cnt))
    mean = sum(v * c for v, c in vals) / T
    return (T - 1) / T * sum(c * (v - mean) ** 2 for v, c in vals)


def estimate_annealed(n: int, model: Model, trials: int, seed: int, streams: int = 8,
                      workers: int = 1, se_method: str = "delta") -> SimResult:
    """One oriented graph per trial; the 2x2 table of (A, B) is all that is kept.

    The covariance uses the unbiased form T/(T-1) (pAB - pA pB).  Standard
    errors come from the delta method with add-one-half smoothed cells
    (``se_method="delta"``) or from the delete-one jackknife.
    """
    if se_method not in ("delta", "jackknife"):
        raise ValueError("se_method must be 'delta' or 'jackknife'")
    c11, c10, c01, c00 = _fan_out(kernels.annealed_counts, n, model, trials, seed, streams, workers)
    T = trials
    pa = (c11 + c10) / T
    pb = (c11 + c01) / T
    pab = c11 / T
    cov = (T / (T - 1)) * (pab - pa * pb) if T > 1 else 0.0
    if cov == 0.0:
        cov = 0.0  # normalize -0.0
    if se_method == "delta":
        se_cov = math.sqrt(_cov_influence_var(c11, c10, c01, c00, 0.5) / T)
    else:
        se_cov = math.sqrt(_jackknife_cov_var(c11, c10, c01, c00))

    def se_prop(k):
        ph = (k + 0.5) / (T + 1)
        return math.sqrt(ph * (1 - ph) / T)

    return SimResult(
        n, model.describe(), f"annealed/{se_method}", T, seed, streams, pa, pb, pab, cov,
        se_prop(c11 + c10), se_prop(c11 + c01), se_prop(c11), se_cov,
        {"n11": c11, "n10": c10, "n01": c01, "n00": c00},
    )


def estimate_quenched(n: int, model: Model, graph_trials: int, seed: int, streams: int = 8,
                      workers: int = 1) -> SimResult:
    """Quenched covariance E_G[P(AB|G) - P(A|G) P(B|G)].

    Each sampled graph gets two independent orientations O1, O2.  Then
    1_A(O1) 1_B(O1) is unbiased for E[P(AB|G)] and 1_A(O1) 1_B(O2) for
    E[P(A|G) P(B|G)]; symmetrizing over the two orientations, the per-graph
    covariance estimate is (A1 - A2)(B1 - B2) / 2, which takes the values
    -1/2, 0, 1/2.

    With a fixed seed the gnp runs at different p share their random
    numbers, which keeps the estimated curve smooth in p.
    """
    sA, sB, sAB, sAxB, npos, nneg = _fan_out(
        kernels.quenched_counts, n, model, graph_trials, seed, streams, workers)
    T = graph_trials
    pa = sA / (2 * T)
    pb = sB / (2 * T)
    pab = sAB / (2 * T)
    cov = (npos - nneg) / (2 * T)
    if T > 1:
        second = (npos + nneg) / (4 * T)
        var = max(second - cov * cov, 0.0) * T / (T - 1)
        if npos + nneg == 0:
            var = 0.25 / (T + 1)  # never saw a disagreement: one-half pseudo-count
        se_cov = math.sqrt(var / T)
    else:
        se_cov = math.inf

    def se_prop(ph):
        # the two orientations of one graph are correlated, so count graphs
        return math.sqrt(ph * (1 - ph) / T)

    return SimResult(
        n, model.describe(), "quenched/two-orientations", T, seed, streams, pa, pb, pab, cov,
        se_prop(pa), se_prop(pb), se_prop(pab), se_cov,
        {"sA": sA, "sB": sB, "sAB": sAB, "sAxB": sAxB, "npos": npos, "nneg": nneg},
    )

