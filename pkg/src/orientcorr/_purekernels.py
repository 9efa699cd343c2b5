"""Pure-Python versions of the compiled kernels.

Same signatures, same random-stream consumption, same results; only slower.
Vertex roles: s = 0, a = 1, b = 2.
"""

from __future__ import annotations

from ._engine import ClusterEngine

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_INV53 = 1.0 / 9007199254740992.0


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class _Stream:
    __slots__ = ("key", "ctr")

    def __init__(self, key: int, ctr: int = 0):
        self.key = key & MASK64
        self.ctr = ctr

    def next(self) -> int:
        self.ctr += 1
        return mix64((self.key + self.ctr * GOLDEN) & MASK64)

    def uniform(self) -> float:
        return (self.next() >> 11) * _INV53


def _reaches(out, src: int, dst: int) -> bool:
    if src == dst:
        return True
    seen = frontier = 1 << src
    target = 1 << dst
    while frontier:
        low = frontier & -frontier
        v = low.bit_length() - 1
        frontier ^= low
        new = out[v] & ~seen
        if new & target:
            return True
        seen |= new
        frontier |= new
    return False


def reaches_masks(out, src: int, dst: int) -> bool:
    return _reaches(list(out), src, dst)


def _pairs(n: int):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def oracle_counts(n: int, lo: int = 0, hi: int | None = None):
    if n < 3 or n > 8:
        raise ValueError("oracle kernel supports 3 <= n <= 8")
    pairs = _pairs(n)
    N = len(pairs)
    hi = (1 << N) if hi is None else hi
    sa = [0] * (N + 1)
    sb = [0] * (N + 1)
    sab = [0] * (N + 1)
    saxb = [0] * (N + 1)
    for mask in range(lo, hi):
        present = [pairs[i] for i in range(N) if (mask >> i) & 1]
        e = len(present)
        out = [0] * n
        for u, v in present:
            out[u] |= 1 << v
        ca = cb = cab = 0
        for g in range(1 << e):
            if g:
                bit = (g & -g).bit_length() - 1
                u, v = present[bit]
                out[u] ^= 1 << v
                out[v] ^= 1 << u
            A = not _reaches(out, 1, 0)
            B = not _reaches(out, 0, 2)
            ca += A
            cb += B
            cab += A and B
        sa[e] += ca
        sb[e] += cb
        sab[e] += cab
        saxb[e] += ca * cb
    return sa, sb, sab, saxb


def _sample_gnp(n, p, rng, out):
    ph = p * 0.5
    for i in range(n):
        out[i] = 0
    for i in range(n):
        for j in range(i + 1, n):
            u = rng.uniform()
            if u < ph:
                out[i] |= 1 << j
            elif u < p:
                out[j] |= 1 << i


def _select_gnm(N, m, rng, perm):
    for i in range(N):
        perm[i] = i
    for i in range(m):
        j = i + int(rng.uniform() * (N - i))
        perm[i], perm[j] = perm[j], perm[i]


def _orient(edges, rng, out, n):
    for i in range(n):
        out[i] = 0
    for u, v in edges:
        if rng.next() >> 63:
            out[v] |= 1 << u
        else:
            out[u] |= 1 << v


def annealed_counts(n, gnm, p, m, key, trials, ctr0=0):
    if n < 3 or n > 64:
        raise ValueError("sampler supports 3 <= n <= 64")
    pairs = _pairs(n)
    N = len(pairs)
    rng = _Stream(key, ctr0)
    out = [0] * n
    perm = [0] * N
    c11 = c10 = c01 = c00 = 0
    for _ in range(trials):
        if gnm:
            _select_gnm(N, m, rng, perm)
            _orient([pairs[perm[i]] for i in range(m)], rng, out, n)
        else:
            _sample_gnp(n, p, rng, out)
        A = not _reaches(out, 1, 0)
        B = not _reaches(out, 0, 2)
        if A:
            if B:
                c11 += 1
            else:
                c10 += 1
        elif B:
            c01 += 1
        else:
            c00 += 1
    return c11, c10, c01, c00


def _orient_bits(edges, bits, out, n):
    for i in range(n):
        out[i] = 0
    for (u, v), bit in zip(edges, bits):
        if bit:
            out[v] |= 1 << u
        else:
            out[u] |= 1 << v


def quenched_counts(n, gnm, p, m, key, trials, ctr0=0):
    if n < 3 or n > 64:
        raise ValueError("sampler supports 3 <= n <= 64")
    pairs = _pairs(n)
    N = len(pairs)
    rng = _Stream(key, ctr0)
    out = [0] * n
    perm = [0] * N
    sA = sB = sAB = sAxB = npos = nneg = 0
    for _ in range(trials):
        edges, o1, o2 = [], [], []
        if gnm:
            _select_gnm(N, m, rng, perm)
            for i in range(m):
                edges.append(pairs[perm[i]])
                o1.append(rng.next() >> 63)
                o2.append(rng.next() >> 63)
        else:
            for i in range(N):
                u = rng.uniform()
                b1 = rng.next() >> 63
                b2 = rng.next() >> 63
                if u < p:
                    edges.append(pairs[i])
                    o1.append(b1)
                    o2.append(b2)
        _orient_bits(edges, o1, out, n)
        A1 = int(not _reaches(out, 1, 0))
        B1 = int(not _reaches(out, 0, 2))
        _orient_bits(edges, o2, out, n)
        A2 = int(not _reaches(out, 1, 0))
        B2 = int(not _reaches(out, 0, 2))
        sA += A1 + A2
        sB += B1 + B2
        sAB += A1 * B1 + A2 * B2
        sAxB += A1 * B2 + A2 * B1
        D = (A1 - A2) * (B1 - B2)
        if D > 0:
            npos += 1
        elif D < 0:
            nneg += 1
    return sA, sB, sAB, sAxB, npos, nneg


class ModP:
    """Residue modulo a prime; just enough arithmetic for the cluster engine."""

    __slots__ = ("v", "P")

    def __init__(self, v: int, P: int):
        self.v = v % P
        self.P = P

    def _val(self, o):
        return o.v if isinstance(o, ModP) else o

    def __add__(self, o):
        return ModP(self.v + self._val(o), self.P)

    __radd__ = __add__

    def __sub__(self, o):
        return ModP(self.v - self._val(o), self.P)

    def __rsub__(self, o):
        return ModP(self._val(o) - self.v, self.P)

    def __mul__(self, o):
        return ModP(self.v * self._val(o), self.P)

    __rmul__ = __mul__


def gnp_mod(n, P, y, q):
    if P >= 1 << 50 or P < 3:
        raise ValueError("modulus must lie in [3, 2**50)")
    if n < 3 or n > 2000:
        raise ValueError("need 3 <= n <= 2000")
    eng = ClusterEngine(ModP(1, P), ModP(y, P), ModP(q, P), n)
    return eng.f(n).v, eng.g_weighted(n).v
