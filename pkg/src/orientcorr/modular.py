"""Exact f_n(p), g_n(p) at a rational p by multi-modular reconstruction.

The exact-rational tables for n in the hundreds do not fit in memory (each
of the ~n^3/6 entries carries thousands of digits).  Instead the recursion
runs modulo many word-size primes and the answers are rebuilt with the
Chinese remainder theorem.

For p = a/b put L = b when a is even and L = 2b otherwise, so that p/2, y
and q all have denominator dividing L.  Every probability here is a
polynomial of degree <= N = n(n-1)/2 in (p/2, q), hence an integer over
L**N lying in [0, L**N].  The weighted joint probability (n-1)(n-2) g_n is
bounded by (n-1)(n-2) L**N the same way, which fixes how many primes are
needed.
"""

from __future__ import annotations

import time
from fractions import Fraction
from typing import Callable, Iterator

from . import kernels
from .poly import as_rational

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(limit: int = 1 << 50) -> Iterator[int]:
    """Primes in decreasing order starting just below ``limit``."""
    c = limit - 1 if limit % 2 == 0 else limit - 2
    while c > 2:
        if is_prime(c):
            yield c
        c -= 2


def homogenizer(p: Fraction) -> int:
    a, b = p.numerator, p.denominator
    return b if a % 2 == 0 else 2 * b


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return r1 + m1 * t, m1 * m2


class _CRT:
    # incremental reconstruction; product tree would be faster but this is
    # negligible next to the kernel time
    def __init__(self):
        self.r = 0
        self.m = 1

    def add(self, r: int, P: int) -> None:
        self.r, self.m = crt_pair(self.r, self.m, r, P)


def gnp_exact_modular(
    n: int,
    p,
    progress: Callable[[dict], None] | None = None,
    prime_limit: int = 1 << 50,
) -> tuple[Fraction, Fraction]:
    """Exact (f_n(p), g_n(p)) for rational ``0 <= p <= 1``.

    ``progress`` is called after every prime with a dict holding ``done``,
    ``needed``, ``elapsed`` and ``eta`` (seconds).
    """
    p = as_rational(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if n < 3:
        raise ValueError("need n >= 3")
    if p == 0:
        return Fraction(1), Fraction(1)
    N = n * (n - 1) // 2
    L = homogenizer(p)
    a, b = p.numerator, p.denominator
    scale = L**N
    wmax = (n - 1) * (n - 2)
    bound = wmax * scale  # both F*L^N and G*L^N lie in [0, bound]
    needed_bits = bound.bit_length() + 1
    # y = (L - aL/(2b)) / L and q = (L - aL/b) / L
    y_num = L - a * L // (2 * b)
    q_num = L - a * L // b

    crt_f = _CRT()
    crt_g = _CRT()
    t0 = time.monotonic()
    done = 0
    est_total = needed_bits // (prime_limit.bit_length() - 1) + 1
    for P in primes_below(prime_limit):
        if crt_f.m.bit_length() > needed_bits:
            break
        if L % P == 0:
            continue
        Linv = pow(L, -1, P)
        fr, gr = kernels.gnp_mod(n, P, y_num * Linv % P, q_num * Linv % P)
        LN = pow(L, N, P)
        crt_f.add(fr * LN % P, P)
        crt_g.add(gr * LN % P, P)
        done += 1
        if progress is not None:
            el = time.monotonic() - t0
            progress({"done": done, "needed": est_total, "elapsed": el,
                      "eta": el / done * max(est_total - done, 0)})
    F = crt_f.r
    G = crt_g.r
    if F > scale or G > bound:
        raise ArithmeticError("modular reconstruction out of range")
    return Fraction(F, scale), Fraction(G, scale * wmax)
