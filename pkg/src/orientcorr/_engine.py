"""Cluster-size recursions over an arbitrary commutative scalar type.

The engine only needs ``+``, ``-``, ``*`` between scalars and with Python
ints, so the same code drives packed integer polynomials (symbolic mode),
``gmpy2.mpq`` (exact numeric mode) and ``gmpy2.mpfr`` (float mode).

Tables are built bottom-up by graph size.  Only ``M(n, k, m, 0)`` is stored,
under the canonical key ``k <= m``; ``r > 0`` entries are derived on demand.
"""

from __future__ import annotations

from typing import Callable

from .poly import binomial


class ClusterEngine:
    def __init__(self, one, y, q, n_max: int, progress: Callable[[int, int], None] | None = None):
        self.one = one
        self.zero = one - one
        self.y = y
        self.q = q
        self.n_max = n_max
        self.progress = progress
        self._ypow = [one]
        self._qpow = [one]
        self._z: dict[tuple[int, int], object] = {}
        self.d = [None, one]
        self.M: dict[tuple[int, int, int], object] = {}
        # T[(n, j)] = sum_k C(n-j, k-j) M(n, k, n+j-k, 0)
        self.T: dict[tuple[int, int], object] = {}
        self.level = 0

    def ypow(self, a: int):
        yp = self._ypow
        while len(yp) <= a:
            yp.append(yp[-1] * self.y)
        return yp[a]

    def qpow(self, b: int):
        qp = self._qpow
        while len(qp) <= b:
            qp.append(qp[-1] * self.q)
        return qp[b]

    def _gap(self, c: int, u: int):
        # y^c - y^u q^c: w must send an edge into the rest of the in-cluster
        key = (c, u)
        z = self._z.get(key)
        if z is None:
            z = self.ypow(c) - self.ypow(u) * self.qpow(c)
            self._z[key] = z
        return z

    def d_full(self, k: int):
        while len(self.d) <= k:
            kk = len(self.d)
            s = self.zero
            for i in range(1, kk):
                s = s + binomial(kk - 1, i - 1) * (self.d[i] * self.ypow(i * (kk - i)))
            self.d.append(self.one - s)
        return self.d[k]

    def M0(self, n: int, k: int, m: int):
        self.ensure(n)
        return self.M[(n, k, m) if k <= m else (n, m, k)]

    def Mr(self, n: int, k: int, m: int, r: int):
        if r == 0:
            return self.M0(n, k, m)
        j = r + k + m - n
        return self.M0(n - r, k, m) * (self.qpow(r * j) * self.ypow(r * (n - r - j)))

    def ensure(self, n: int) -> None:
        if n > self.n_max:
            raise ValueError(f"table built for n <= {self.n_max}, asked for {n}")
        self.d_full(n)
        while self.level < n:
            self._build_level(self.level + 1)
            self.level += 1
            if self.progress is not None:
                self.progress(self.level, n)

    def _build_level(self, n: int) -> None:
        M = self.M
        d = self.d
        for k in range(1, n):
            e = n - k
            for m in range(max(n - k + 1, k), n + 1):
                delta = n - m
                c = m + k - n
                s = self.zero
                for j in range(1, e + 1):
                    mj = m - j
                    prev = M[(n - j, k, mj) if k <= mj else (n - j, mj, k)]
                    a = j * delta + (j - 1) * (e - j)
                    w = self.ypow(a) * self.qpow((j - 1) * c)
                    w = w * self._gap(c, e - j)
                    w = (binomial(e - 1, j - 1) * d[j]) * w
                    s = s + prev * w
                M[(n, k, m)] = s
        T = self.T
        for j in range(1, n):
            t = self.zero
            for k in range(j, n + 1):
                mm = n + j - k
                t = t + binomial(n - j, k - j) * M[(n, k, mm) if k <= mm else (n, mm, k)]
            T[(n, j)] = t
        total = self.zero
        for j in range(1, n):
            cj = binomial(n - 1, j - 1)
            for r in range(0, n - j + 1):
                t = T[(n - r, j)]
                if r:
                    t = t * (self.qpow(r * j) * self.ypow(r * (n - r - j)))
                total = total + (cj * binomial(n - j, r)) * t
        full = self.one - total
        M[(n, n, n)] = full
        T[(n, n)] = full

    def f(self, n: int):
        """P(s does not reach b) on n vertices."""
        if n < 2:
            raise ValueError("f needs n >= 2")
        self.d_full(n)
        s = self.zero
        for k in range(1, n):
            s = s + binomial(n - 2, k - 1) * (self.d[k] * self.ypow(k * (n - k)))
        return s

    def g_weighted(self, n: int):
        """``(n-1)(n-2) * P(a does not reach s, s does not reach b)``."""
        if n < 3:
            raise ValueError("g needs n >= 3")
        self.ensure(n)
        total = self.zero
        M = self.M
        for j in range(1, n - 1):
            cj = binomial(n - 1, j - 1)
            for r in range(0, n - j + 1):
                nr = n - r
                inner = self.zero
                # k + m = n - r + j, j <= k <= n-1, j <= m
                for k in range(j, min(n - 1, nr) + 1):
                    m = nr + j - k
                    if m < j:
                        continue
                    wt = (n - k - 1) * (n - m - 1) + n - j - 1
                    if wt == 0:
                        continue
                    mult = cj * binomial(n - j, m - j) * binomial(n - m, k - j) * wt
                    inner = inner + mult * M[(nr, k, m) if k <= m else (nr, m, k)]
                if r:
                    inner = inner * (self.qpow(r * j) * self.ypow(r * (nr - j)))
                total = total + inner
        return total
