# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.

Every function here has a line-for-line twin in ``_purekernels.py``; both
consume the random stream identically and must return identical results.
Vertex roles are fixed: s = 0, a = 1, b = 2.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    ctypedef unsigned long long u128 "unsigned __int128"

cdef enum:
    MAXV = 64

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL


cdef inline uint64_t _mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline uint64_t _next(uint64_t key, uint64_t *ctr) noexcept nogil:
    ctr[0] += 1
    return _mix64(key + ctr[0] * GOLDEN)


cdef inline double _uniform(uint64_t key, uint64_t *ctr) noexcept nogil:
    return <double>(_next(key, ctr) >> 11) * (1.0 / 9007199254740992.0)


cdef inline bint _reaches(uint64_t *out, int src, int dst) noexcept nogil:
    cdef uint64_t seen = (<uint64_t>1) << src
    cdef uint64_t frontier = seen
    cdef uint64_t target = (<uint64_t>1) << dst
    cdef uint64_t new
    cdef int v
    if src == dst:
        return True
    while frontier:
        v = __builtin_ctzll(frontier)
        frontier &= frontier - 1
        new = out[v] & ~seen
        if new & target:
            return True
        seen |= new
        frontier |= new
    return False


def reaches_masks(list out, int src, int dst):
    cdef uint64_t buf[MAXV]
    cdef int i
    for i in range(len(out)):
        buf[i] = out[i]
    return bool(_reaches(buf, src, dst))


def oracle_counts(int n, object lo=0, object hi=None):
    """Per edge-count sums of orientation counts over graph masks [lo, hi).

    Returns four lists indexed by the number of present edges ``e``:
    sum of #orientations with A, with B, with A and B, and sum over graphs
    of (#A) * (#B).  A = {a does not reach s}, B = {s does not reach b}.
    """
    if n < 3 or n > 8:
        raise ValueError("oracle kernel supports 3 <= n <= 8")
    cdef int N = n * (n - 1) // 2
    cdef uint64_t total = (<uint64_t>1) << N
    cdef uint64_t mlo = lo
    cdef uint64_t mhi = total if hi is None else hi
    cdef int eu[28]
    cdef int ev[28]
    cdef int pu[28]
    cdef int pv[28]
    cdef uint64_t out[MAXV]
    cdef uint64_t sa[29]
    cdef uint64_t sb[29]
    cdef uint64_t sab[29]
    cdef uint64_t saxb[29]
    cdef int i, j, idx, e, bit
    cdef uint64_t mask, g, norient, ca, cb, cab
    cdef bint A, B
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            eu[idx] = i
            ev[idx] = j
            idx += 1
    for i in range(N + 1):
        sa[i] = 0
        sb[i] = 0
        sab[i] = 0
        saxb[i] = 0
    with nogil:
        mask = mlo
        while mask < mhi:
            e = 0
            for i in range(n):
                out[i] = 0
            for i in range(N):
                if (mask >> i) & 1:
                    pu[e] = eu[i]
                    pv[e] = ev[i]
                    out[eu[i]] |= (<uint64_t>1) << ev[i]
                    e += 1
            norient = (<uint64_t>1) << e
            ca = 0
            cb = 0
            cab = 0
            g = 0
            while g < norient:
                if g:
                    bit = __builtin_ctzll(g)
                    out[pu[bit]] ^= (<uint64_t>1) << pv[bit]
                    out[pv[bit]] ^= (<uint64_t>1) << pu[bit]
                A = not _reaches(out, 1, 0)
                B = not _reaches(out, 0, 2)
                ca += A
                cb += B
                cab += A and B
                g += 1
            sa[e] += ca
            sb[e] += cb
            sab[e] += cab
            saxb[e] += ca * cb
            mask += 1
    return ([sa[i] for i in range(N + 1)], [sb[i] for i in range(N + 1)],
            [sab[i] for i in range(N + 1)], [saxb[i] for i in range(N + 1)])


cdef void _sample_gnp(int n, double p, uint64_t key, uint64_t *ctr, uint64_t *out) noexcept nogil:
    cdef int i, j
    cdef double u
    cdef double ph = p * 0.5
    for i in range(n):
        out[i] = 0
    for i in range(n):
        for j in range(i + 1, n):
            u = _uniform(key, ctr)
            if u < ph:
                out[i] |= (<uint64_t>1) << j
            elif u < p:
                out[j] |= (<uint64_t>1) << i


cdef void _select_gnm(int N, int m, uint64_t key, uint64_t *ctr, int *perm) noexcept nogil:
    # partial Fisher-Yates; the first m entries of perm are the chosen edges
    cdef int i, j, tmp
    for i in range(N):
        perm[i] = i
    for i in range(m):
        j = i + <int>(_uniform(key, ctr) * (N - i))
        tmp = perm[i]
        perm[i] = perm[j]
        perm[j] = tmp


cdef void _orient(int e, int *pu, int *pv, uint64_t key, uint64_t *ctr, uint64_t *out, int n) noexcept nogil:
    cdef int i
    for i in range(n):
        out[i] = 0
    for i in range(e):
        if _next(key, ctr) >> 63:
            out[pv[i]] |= (<uint64_t>1) << pu[i]
        else:
            out[pu[i]] |= (<uint64_t>1) << pv[i]


def annealed_counts(int n, bint gnm, double p, int m, uint64_t key, object trials, uint64_t ctr0=0):
    """Joint cell counts (n11, n10, n01, n00) of the indicators (A, B)."""
    if n < 3 or n > MAXV:
        raise ValueError("sampler supports 3 <= n <= 64")
    cdef int N = n * (n - 1) // 2
    cdef uint64_t T = trials
    cdef uint64_t ctr = ctr0
    cdef uint64_t out[MAXV]
    cdef int *eu = <int *>malloc(N * sizeof(int))
    cdef int *ev = <int *>malloc(N * sizeof(int))
    cdef int *perm = <int *>malloc(N * sizeof(int))
    cdef int *pu = <int *>malloc(N * sizeof(int))
    cdef int *pv = <int *>malloc(N * sizeof(int))
    cdef uint64_t c11 = 0, c10 = 0, c01 = 0, c00 = 0, t
    cdef int i, j, idx
    cdef bint A, B
    if eu == NULL or ev == NULL or perm == NULL or pu == NULL or pv == NULL:
        free(eu); free(ev); free(perm); free(pu); free(pv)
        raise MemoryError()
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            eu[idx] = i
            ev[idx] = j
            idx += 1
    with nogil:
        t = 0
        while t < T:
            if gnm:
                _select_gnm(N, m, key, &ctr, perm)
                for i in range(m):
                    pu[i] = eu[perm[i]]
                    pv[i] = ev[perm[i]]
                _orient(m, pu, pv, key, &ctr, out, n)
            else:
                _sample_gnp(n, p, key, &ctr, out)
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
            t += 1
    free(eu); free(ev); free(perm); free(pu); free(pv)
    return (c11, c10, c01, c00)


cdef void _orient_bits(int e, int *pu, int *pv, unsigned char *bits, uint64_t *out, int n) noexcept nogil:
    cdef int i
    for i in range(n):
        out[i] = 0
    for i in range(e):
        if bits[i]:
            out[pv[i]] |= (<uint64_t>1) << pu[i]
        else:
            out[pu[i]] |= (<uint64_t>1) << pv[i]


def quenched_counts(int n, bint gnm, double p, int m, uint64_t key, object trials, uint64_t ctr0=0):
    """Two independent orientations per sampled graph.

    Returns (sA, sB, sAB, sAxB, npos, nneg): sums of A1+A2, B1+B2,
    A1B1+A2B2, A1B2+A2B1 and the counts of (A1-A2)(B1-B2) = +1 / -1.

    Every trial consumes a fixed number of draws (3N for gnp: presence and
    two orientation bits per pair, whether or not the pair is present), so
    runs at different p with the same key share their random numbers.
    """
    if n < 3 or n > MAXV:
        raise ValueError("sampler supports 3 <= n <= 64")
    cdef int N = n * (n - 1) // 2
    cdef uint64_t T = trials
    cdef uint64_t ctr = ctr0
    cdef uint64_t out[MAXV]
    cdef int *eu = <int *>malloc(N * sizeof(int))
    cdef int *ev = <int *>malloc(N * sizeof(int))
    cdef int *perm = <int *>malloc(N * sizeof(int))
    cdef int *pu = <int *>malloc(N * sizeof(int))
    cdef int *pv = <int *>malloc(N * sizeof(int))
    cdef unsigned char *o1 = <unsigned char *>malloc(N)
    cdef unsigned char *o2 = <unsigned char *>malloc(N)
    cdef uint64_t sA = 0, sB = 0, sAB = 0, sAxB = 0, npos = 0, nneg = 0, t
    cdef int i, j, idx, e
    cdef int A1, B1, A2, B2, D
    cdef double u
    cdef unsigned char b1, b2
    if eu == NULL or ev == NULL or perm == NULL or pu == NULL or pv == NULL or o1 == NULL or o2 == NULL:
        free(eu); free(ev); free(perm); free(pu); free(pv); free(o1); free(o2)
        raise MemoryError()
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            eu[idx] = i
            ev[idx] = j
            idx += 1
    with nogil:
        t = 0
        while t < T:
            if gnm:
                _select_gnm(N, m, key, &ctr, perm)
                for i in range(m):
                    pu[i] = eu[perm[i]]
                    pv[i] = ev[perm[i]]
                    o1[i] = <unsigned char>(_next(key, &ctr) >> 63)
                    o2[i] = <unsigned char>(_next(key, &ctr) >> 63)
                e = m
            else:
                e = 0
                for i in range(N):
                    u = _uniform(key, &ctr)
                    b1 = <unsigned char>(_next(key, &ctr) >> 63)
                    b2 = <unsigned char>(_next(key, &ctr) >> 63)
                    if u < p:
                        pu[e] = eu[i]
                        pv[e] = ev[i]
                        o1[e] = b1
                        o2[e] = b2
                        e += 1
            _orient_bits(e, pu, pv, o1, out, n)
            A1 = not _reaches(out, 1, 0)
            B1 = not _reaches(out, 0, 2)
            _orient_bits(e, pu, pv, o2, out, n)
            A2 = not _reaches(out, 1, 0)
            B2 = not _reaches(out, 0, 2)
            sA += A1 + A2
            sB += B1 + B2
            sAB += A1 * B1 + A2 * B2
            sAxB += A1 * B2 + A2 * B1
            D = (A1 - A2) * (B1 - B2)
            if D > 0:
                npos += 1
            elif D < 0:
                nneg += 1
            t += 1
    free(eu); free(ev); free(perm); free(pu); free(pv); free(o1); free(o2)
    return (sA, sB, sAB, sAxB, npos, nneg)


cdef inline uint64_t _mulmod(uint64_t a, uint64_t b, uint64_t P, double invP) noexcept nogil:
    # valid for P < 2**50: the float quotient is off by at most one
    cdef uint64_t qq = <uint64_t>(<double><int64_t>a * <double><int64_t>b * invP)
    cdef int64_t r = <int64_t>(a * b - qq * P)
    if r < 0:
        r += <int64_t>P
    elif r >= <int64_t>P:
        r -= <int64_t>P
    return <uint64_t>r


cdef inline uint64_t _addmod(uint64_t a, uint64_t b, uint64_t P) noexcept nogil:
    a += b
    if a >= P:
        a -= P
    return a


cdef inline uint64_t _submod(uint64_t a, uint64_t b, uint64_t P) noexcept nogil:
    if a >= b:
        return a - b
    return a + P - b


def gnp_mod(int n, uint64_t P, uint64_t y, uint64_t q):
    """f_n and (n-1)(n-2) g_n modulo a prime P < 2**50.

    ``y`` and ``q`` are the residues of 1 - p/2 and 1 - p.

    M(n', k, m, 0) is stored for both orders of (k, m) at
    ``koff[k] + (n'-m)*S + n'``, so the rule (ii) sum walks memory
    contiguously.  When q is invertible each entry is stored multiplied
    by rho**-n' with rho = y**(n'-m) * q**(k+m-n'); rho is constant along
    the diagonals the sum walks, so the inner loop needs no modular
    reduction at all, only 128-bit multiply-adds.
    """
    if P >= (<uint64_t>1) << 50 or P < 3:
        raise ValueError("modulus must lie in [3, 2**50)")
    if n < 3 or n > 2000:
        raise ValueError("need 3 <= n <= 2000")
    cdef int S = n + 1
    cdef int N = n * (n - 1) // 2
    cdef int PW = n * S + 1
    cdef double invP = 1.0 / <double>P
    y %= P
    q %= P
    cdef bint scaled = q != 0 and y != 0
    cdef uint64_t yinv = pow(int(y), -1, int(P)) if scaled else 0
    cdef uint64_t qinv = pow(int(q), -1, int(P)) if scaled else 0
    cdef uint64_t *ypow = <uint64_t *>malloc(PW * sizeof(uint64_t))
    cdef uint64_t *qpow = <uint64_t *>malloc(PW * sizeof(uint64_t))
    cdef uint64_t *yipow = <uint64_t *>malloc(PW * sizeof(uint64_t))
    cdef uint64_t *qipow = <uint64_t *>malloc(PW * sizeof(uint64_t))
    cdef uint64_t *C = <uint64_t *>malloc(S * S * sizeof(uint64_t))
    cdef uint64_t *d = <uint64_t *>malloc(S * sizeof(uint64_t))
    cdef uint64_t *V = <uint64_t *>malloc(S * sizeof(uint64_t))
    cdef uint64_t *V2 = <uint64_t *>malloc(S * sizeof(uint64_t))
    cdef uint64_t *Tt = <uint64_t *>malloc(S * S * sizeof(uint64_t))
    cdef int64_t *koff = <int64_t *>malloc((S + 1) * sizeof(int64_t))
    cdef uint64_t *M = NULL
    cdef uint64_t *row
    cdef int64_t msize
    cdef int i, j, k, m, nn, e, delta, c, r, kk
    cdef uint64_t s, t, total, cj, fres, gres, inner, wt, mult, a, u, x, val
    cdef u128 acc1, acc2
    cdef u128 P128 = P
    if (ypow == NULL or qpow == NULL or yipow == NULL or qipow == NULL or C == NULL
            or d == NULL or V == NULL or V2 == NULL or Tt == NULL or koff == NULL):
        free(ypow); free(qpow); free(yipow); free(qipow); free(C); free(d)
        free(V); free(V2); free(Tt); free(koff)
        raise MemoryError()
    koff[0] = 0
    koff[1] = 0
    for k in range(1, S):
        koff[k + 1] = koff[k] + <int64_t>k * S
    msize = koff[S]
    M = <uint64_t *>malloc(msize * sizeof(uint64_t))
    if M == NULL:
        free(ypow); free(qpow); free(yipow); free(qipow); free(C); free(d)
        free(V); free(V2); free(Tt); free(koff)
        raise MemoryError()
    with nogil:
        ypow[0] = 1
        qpow[0] = 1
        yipow[0] = 1
        qipow[0] = 1
        for i in range(1, PW):
            ypow[i] = _mulmod(ypow[i - 1], y, P, invP)
            qpow[i] = _mulmod(qpow[i - 1], q, P, invP)
            yipow[i] = _mulmod(yipow[i - 1], yinv, P, invP)
            qipow[i] = _mulmod(qipow[i - 1], qinv, P, invP)
        for i in range(S):
            C[i * S] = 1
            for j in range(1, S):
                if j > i:
                    C[i * S + j] = 0
                else:
                    C[i * S + j] = _addmod(C[(i - 1) * S + j - 1], C[(i - 1) * S + j], P)
        d[1] = 1
        for k in range(2, S):
            s = 0
            for i in range(1, k):
                s = _addmod(s, _mulmod(C[(k - 1) * S + i - 1], _mulmod(d[i], ypow[i * (k - i)], P, invP), P, invP), P)
            d[k] = _submod(1, s, P)

        for nn in range(1, S):
            for k in range(1, nn):
                e = nn - k
                # V[j] = C(e-1, j-1) d_j y^((j-1)(e-j)),  V2[j] = V[j] y^(e-j)
                for j in range(1, e + 1):
                    V[j] = _mulmod(_mulmod(C[(e - 1) * S + j - 1], d[j], P, invP), ypow[(j - 1) * (e - j)], P, invP)
                    V2[j] = _mulmod(V[j], ypow[e - j], P, invP)
                # canonical k <= m, i.e. delta = nn - m <= e; k + m > nn gives delta < k
                delta = 0
                while delta <= e and delta < k:
                    m = nn - delta
                    c = k - delta
                    row = M + koff[k] + delta * S + nn
                    acc1 = 0
                    acc2 = 0
                    if scaled:
                        for j in range(1, e + 1):
                            a = row[-j]
                            acc1 += <u128>a * V[j]
                            acc2 += <u128>a * V2[j]
                        # stored value: y^c q^-c A1 - A2
                        x = _submod(_mulmod(_mulmod(ypow[c], qipow[c], P, invP), <uint64_t>(acc1 % P128), P, invP),
                                    <uint64_t>(acc2 % P128), P)
                        row[0] = x
                        if m != k:
                            M[koff[m] + (nn - k) * S + nn] = _mulmod(x, yipow[(m - k) * nn], P, invP)
                    else:
                        for j in range(1, e + 1):
                            u = _mulmod(ypow[j * delta], qpow[(j - 1) * c], P, invP)
                            a = _mulmod(row[-j], u, P, invP)
                            acc1 += <u128>a * V[j]
                            acc2 += <u128>a * V2[j]
                        x = _submod(_mulmod(ypow[c], <uint64_t>(acc1 % P128), P, invP),
                                    _mulmod(qpow[c], <uint64_t>(acc2 % P128), P, invP), P)
                        row[0] = x
                        if m != k:
                            M[koff[m] + (nn - k) * S + nn] = x
                    delta += 1
            # T(nn, j) = sum_k C(nn-j, k-j) M(nn, k, nn+j-k); there delta = k-j, c = j
            for j in range(1, nn):
                t = 0
                for k in range(j, nn + 1):
                    val = M[koff[k] + (k - j) * S + nn]
                    if scaled:
                        val = _mulmod(val, ypow[(k - j) * nn], P, invP)
                    t = _addmod(t, _mulmod(C[(nn - j) * S + k - j], val, P, invP), P)
                if scaled:
                    t = _mulmod(t, qpow[j * nn], P, invP)
                Tt[nn * S + j] = t
            total = 0
            for j in range(1, nn):
                cj = C[(nn - 1) * S + j - 1]
                for r in range(0, nn - j + 1):
                    t = Tt[(nn - r) * S + j]
                    if r:
                        t = _mulmod(t, _mulmod(qpow[r * j], ypow[r * (nn - r - j)], P, invP), P, invP)
                    total = _addmod(total, _mulmod(_mulmod(cj, C[(nn - j) * S + r], P, invP), t, P, invP), P)
            x = _submod(1, total, P)
            Tt[nn * S + nn] = x
            if scaled:
                x = _mulmod(x, qipow[nn * nn], P, invP)
            M[koff[nn] + nn] = x

        fres = 0
        for k in range(1, n):
            fres = _addmod(fres, _mulmod(C[(n - 2) * S + k - 1], _mulmod(d[k], ypow[k * (n - k)], P, invP), P, invP), P)
        gres = 0
        for j in range(1, n - 1):
            cj = C[(n - 1) * S + j - 1]
            for r in range(0, n - j + 1):
                kk = n - r
                inner = 0
                k = j
                while k <= n - 1 and k <= kk:
                    m = kk + j - k
                    if m >= j:
                        wt = <uint64_t>((n - k - 1) * (n - m - 1) + n - j - 1)
                        if wt != 0:
                            mult = _mulmod(_mulmod(cj, C[(n - j) * S + m - j], P, invP), C[(n - m) * S + k - j], P, invP)
                            mult = _mulmod(mult, wt % P, P, invP)
                            val = M[koff[k] + (kk - m) * S + kk]
                            if scaled:
                                # unscale: y^(delta n') q^(c n') with delta = kk-m, c = j
                                val = _mulmod(val, ypow[(kk - m) * kk], P, invP)
                            inner = _addmod(inner, _mulmod(mult, val, P, invP), P)
                    k += 1
                if scaled:
                    inner = _mulmod(inner, qpow[j * kk], P, invP)
                if r:
                    inner = _mulmod(inner, _mulmod(qpow[r * j], ypow[r * (kk - j)], P, invP), P, invP)
                gres = _addmod(gres, inner, P)
    free(ypow); free(qpow); free(yipow); free(qipow); free(C); free(d)
    free(V); free(V2); free(Tt); free(koff); free(M)
    return int(fres), int(gres)
