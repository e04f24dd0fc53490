# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernel, a drop-in twin of the pure-Python one.

Same census_block(ctx, start, stop) contract and the same aggregates;
the hot loops run without the GIL so census shards can use real threads.
"""

from libc.string cimport memset


cdef extern from *:
    int __builtin_clzll(unsigned long long) nogil


cdef inline int _bitlen(unsigned long long x) nogil:
    if x == 0:
        return 0
    return 64 - __builtin_clzll(x)


cdef struct Agg:
    long long cT
    long long c1
    long long c2
    long long c3
    long long c4
    long long s4v
    long long tau
    long long histP[64]
    long long histO[64]


cdef inline void _tally(Agg* a, int* fdeg, long long* fexp, int nf,
                        bint any_rep, long long tau, double B, double D,
                        double s4b, const long long* qpow) nogil:
    cdef int j, dd, deg_max
    cdef long long v
    cdef bint in_T, t1, t2, t3
    deg_max = fdeg[nf - 1]
    in_T = False
    if any_rep:
        for j in range(nf):
            if fexp[j] < 2:
                continue
            v = 0
            dd = fdeg[j]
            while dd <= deg_max:
                v += qpow[deg_max - dd]
                dd += fdeg[j]
            if v < fexp[j]:
                in_T = True
                break
    t1 = nf > B
    t2 = False
    t3 = False
    for j in range(nf):
        if fexp[j] >= 2 and fdeg[j] > D:
            t2 = True
        if fexp[j] >= D and fdeg[j] <= D:
            t3 = True
    if in_T:
        a.cT += 1
    if t1:
        a.c1 += 1
    if t2:
        a.c2 += 1
    if t3:
        a.c3 += 1
    if in_T and not (t1 or t2 or t3):
        a.c4 += 1
        if not deg_max < s4b:
            a.s4v += 1
    a.tau += tau
    a.histP[deg_max] += 1
    a.histO[nf] += 1


def census_block(ctx, start, stop):
    if ctx["kind"] == "q2":
        return _block_q2(ctx, start, stop)
    return _block_digits(ctx, start, stop)


cdef _block_q2(ctx, long long start, long long stop):
    cdef int n = ctx["n"]
    cdef double B = ctx["B"]
    cdef double D = ctx["D"]
    cdef double s4b = ctx["s4_bound"]
    cdef const long long[:] qpow_v = ctx["qpow"]
    cdef const int[:] degs_v = ctx["prime_degs"]
    cdef const unsigned long long[:] codes_v = ctx["prime_codes"]
    cdef const long long* qpow = &qpow_v[0]
    cdef Py_ssize_t nprimes = degs_v.shape[0]
    cdef const int* degs = NULL
    cdef const unsigned long long* codes = NULL
    if nprimes > 0:
        degs = &degs_v[0]
        codes = &codes_v[0]
    cdef Agg a
    memset(&a, 0, sizeof(a))
    cdef int fdeg[64]
    cdef long long fexp[64]
    cdef unsigned long long base = (<unsigned long long>1) << n
    cdef unsigned long long idx, m, P, r, quo
    cdef long long e, tau
    cdef int mbits, d, pb, sh, rb, nf
    cdef Py_ssize_t i
    cdef bint any_rep
    with nogil:
        for idx in range(<unsigned long long>start, <unsigned long long>stop):
            m = base | idx
            mbits = n + 1
            nf = 0
            tau = 1
            any_rep = False
            for i in range(nprimes):
                d = degs[i]
                if 2 * d >= mbits:
                    break
                P = codes[i]
                pb = d + 1
                r = m
                quo = 0
                rb = mbits
                while rb >= pb:
                    sh = rb - pb
                    r ^= P << sh
                    quo |= (<unsigned long long>1) << sh
                    rb = _bitlen(r)
                if r != 0:
                    continue
                e = 1
                m = quo
                mbits = _bitlen(m)
                while mbits > d:
                    r = m
                    quo = 0
                    rb = mbits
                    while rb >= pb:
                        sh = rb - pb
                        r ^= P << sh
                        quo |= (<unsigned long long>1) << sh
                        rb = _bitlen(r)
                    if r != 0:
                        break
                    e += 1
                    m = quo
                    mbits = _bitlen(m)
                fdeg[nf] = d
                fexp[nf] = e
                nf += 1
                tau *= e + 1
                if e > 1:
                    any_rep = True
            if mbits > 1:
                fdeg[nf] = mbits - 1
                fexp[nf] = 1
                nf += 1
                tau *= 2
            _tally(&a, fdeg, fexp, nf, any_rep, tau, B, D, s4b, qpow)
    return (a.cT, a.c1, a.c2, a.c3, a.c4, a.s4v, a.tau,
            [a.histP[i] for i in range(n + 1)],
            [a.histO[i] for i in range(n + 1)])


cdef _block_digits(ctx, long long start, long long stop):
    cdef int q = ctx["q"]
    cdef int n = ctx["n"]
    cdef int p = ctx["p"]
    cdef bint modp = ctx["kind"] == "modp"
    cdef double B = ctx["B"]
    cdef double D = ctx["D"]
    cdef double s4b = ctx["s4_bound"]
    cdef const long long[:] qpow_v = ctx["qpow"]
    cdef const long long* qpow = &qpow_v[0]
    cdef const int[:] degs_v = ctx["prime_degs"]
    cdef const int[:] offs_v = ctx["prime_offs"]
    cdef const unsigned short[:] pc_v = ctx["prime_coeffs"]
    cdef Py_ssize_t nprimes = degs_v.shape[0]
    cdef const int* degs = NULL
    cdef const int* offs = NULL
    cdef const unsigned short* pc = NULL
    if nprimes > 0:
        degs = &degs_v[0]
        offs = &offs_v[0]
        pc = &pc_v[0]
    cdef const unsigned short[:] mul_v
    cdef const unsigned short[:] sub_v
    cdef const unsigned short* mul = NULL
    cdef const unsigned short* sub = NULL
    if not modp:
        mul_v = ctx["mul"]
        sub_v = ctx["sub"]
        mul = &mul_v[0]
        sub = &sub_v[0]
    cdef Agg a
    memset(&a, 0, sizeof(a))
    cdef int fdeg[64]
    cdef long long fexp[64]
    cdef unsigned short digits[64]
    cdef unsigned short m[64]
    cdef unsigned short w[64]
    cdef unsigned short quo[64]
    cdef long long idx, v
    cdef long long e, tau, acc
    cdef int mdeg, d, off, nf, pos, jj, c, cq, carry_i
    cdef Py_ssize_t i
    cdef bint any_rep, divides, first
    memset(digits, 0, sizeof(digits))
    digits[n] = 1
    v = start
    for jj in range(n):
        digits[jj] = <unsigned short>(v % q)
        v //= q
    first = True
    with nogil:
        for idx in range(start, stop):
            if first:
                first = False
            else:
                carry_i = 0
                while True:
                    digits[carry_i] += 1
                    if digits[carry_i] < q:
                        break
                    digits[carry_i] = 0
                    carry_i += 1
            for jj in range(n + 1):
                m[jj] = digits[jj]
            mdeg = n
            nf = 0
            tau = 1
            any_rep = False
            for i in range(nprimes):
                d = degs[i]
                if 2 * d > mdeg:
                    break
                off = offs[i]
                e = 0
                while mdeg >= d:
                    for jj in range(mdeg + 1):
                        w[jj] = m[jj]
                    for pos in range(mdeg - d, -1, -1):
                        c = w[pos + d]
                        quo[pos] = <unsigned short>c
                        if c:
                            if modp:
                                for jj in range(d):
                                    acc = (<long long>w[pos + jj] - <long long>c * pc[off + jj]) % p
                                    if acc < 0:
                                        acc += p
                                    w[pos + jj] = <unsigned short>acc
                            else:
                                cq = c * q
                                for jj in range(d):
                                    w[pos + jj] = sub[w[pos + jj] * q + mul[cq + pc[off + jj]]]
                    divides = True
                    for jj in range(d):
                        if w[jj]:
                            divides = False
                            break
                    if not divides:
                        break
                    e += 1
                    mdeg -= d
                    for jj in range(mdeg + 1):
                        m[jj] = quo[jj]
                if e:
                    fdeg[nf] = d
                    fexp[nf] = e
                    nf += 1
                    tau *= e + 1
                    if e > 1:
                        any_rep = True
            if mdeg > 0:
                fdeg[nf] = mdeg
                fexp[nf] = 1
                nf += 1
                tau *= 2
            _tally(&a, fdeg, fexp, nf, any_rep, tau, B, D, s4b, qpow)
    return (a.cT, a.c1, a.c2, a.c3, a.c4, a.s4v, a.tau,
            [a.histP[i] for i in range(n + 1)],
            [a.histO[i] for i in range(n + 1)])
