"""Pure-Python census kernel.

census_block walks a contiguous range of monic degree-n polynomials,
trial-divides each against a precomputed irreducible list, classifies it,
and returns additive aggregates.  The compiled kernel implements the same
contract; either one can serve a census run.

The context dict is assembled by the census module:
  kind         "q2" | "modp" | "table"
  q, n, p      field order, degree, characteristic
  B, D         classification thresholds (floats)
  s4_bound     D + ln D / ln q, or -inf when D <= 0
  qpow         array of q**i for i in 0..n
  prime_degs   degree of each sieve irreducible, ascending
  prime_codes  ("q2") delta code of each irreducible
  prime_offs / prime_coeffs   ("modp"/"table") flattened coefficient rows
  mul, sub     ("table") flat q*q field tables

Aggregates returned: (count_T, c1, c2, c3, c4, s4_violations, tau_total,
hist_deg_max_irr, hist_omega), histograms indexed 0..n.
"""


def census_block(ctx, start, stop):
    if ctx["kind"] == "q2":
        return _block_q2(ctx, start, stop)
    return _block_digits(ctx, start, stop)


def _classify(nf, fdeg, fexp, any_rep, ctx, counts, hist_degP, hist_omega):
    B = ctx["B"]
    D = ctx["D"]
    qpow = ctx["qpow"]
    deg_max = fdeg[nf - 1]
    in_T = False
    if any_rep:
        for i in range(nf):
            e = fexp[i]
            if e < 2:
                continue
            d = fdeg[i]
            # valuation of (t^deg_max)! at any prime of degree d
            v = 0
            dd = d
            while dd <= deg_max:
                v += qpow[deg_max - dd]
                dd += d
            if v < e:
                in_T = True
                break
    t1 = nf > B
    t2 = False
    t3 = False
    for i in range(nf):
        e = fexp[i]
        d = fdeg[i]
        if e >= 2 and d > D:
            t2 = True
        if e >= D and d <= D:
            t3 = True
    if in_T:
        counts[0] += 1
    if t1:
        counts[1] += 1
    if t2:
        counts[2] += 1
    if t3:
        counts[3] += 1
    if in_T and not (t1 or t2 or t3):
        counts[4] += 1
        if not deg_max < ctx["s4_bound"]:
            counts[5] += 1
    hist_degP[deg_max] += 1
    hist_omega[nf] += 1


def _block_q2(ctx, start, stop):
    n = ctx["n"]
    degs = ctx["prime_degs"]
    codes = ctx["prime_codes"]
    nprimes = len(degs)
    counts = [0, 0, 0, 0, 0, 0]  # T, T1, T2, T3, T4, s4_violations
    tau_total = 0
    hist_degP = [0] * (n + 1)
    hist_omega = [0] * (n + 1)
    fdeg = [0] * (n + 1)
    fexp = [0] * (n + 1)
    base = 1 << n
    for idx in range(start, stop):
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
            # carryless long division, remainder and quotient together
            r = m
            quo = 0
            rb = mbits
            while rb >= pb:
                sh = rb - pb
                r ^= P << sh
                quo |= 1 << sh
                rb = r.bit_length()
            if r:
                continue
            e = 1
            m = quo
            mbits = m.bit_length()
            while mbits > d:
                r = m
                quo = 0
                rb = mbits
                while rb >= pb:
                    sh = rb - pb
                    r ^= P << sh
                    quo |= 1 << sh
                    rb = r.bit_length()
                if r:
                    break
                e += 1
                m = quo
                mbits = m.bit_length()
            fdeg[nf] = d
            fexp[nf] = e
            nf += 1
            tau *= e + 1
            if e > 1:
                any_rep = True
        if mbits > 1:
            # leftover cofactor is irreducible: anything smaller divided out
            fdeg[nf] = mbits - 1
            fexp[nf] = 1
            nf += 1
            tau *= 2
        tau_total += tau
        _classify(nf, fdeg, fexp, any_rep, ctx, counts, hist_degP, hist_omega)
    return (counts[0], counts[1], counts[2], counts[3], counts[4], counts[5],
            tau_total, hist_degP, hist_omega)


def _block_digits(ctx, start, stop):
    q = ctx["q"]
    n = ctx["n"]
    p = ctx["p"]
    modp = ctx["kind"] == "modp"
    mul = sub = None
    if not modp:
        mul = ctx["mul"]
        sub = ctx["sub"]
    degs = ctx["prime_degs"]
    offs = ctx["prime_offs"]
    pc = ctx["prime_coeffs"]
    nprimes = len(degs)
    counts = [0, 0, 0, 0, 0, 0]
    tau_total = 0
    hist_degP = [0] * (n + 1)
    hist_omega = [0] * (n + 1)
    fdeg = [0] * (n + 1)
    fexp = [0] * (n + 1)
    digits = [0] * (n + 1)
    digits[n] = 1
    v = start
    for i in range(n):
        v, digits[i] = divmod(v, q)
    m = [0] * (n + 1)
    w = [0] * (n + 1)
    quo = [0] * (n + 1)
    first = True
    for _ in range(start, stop):
        if first:
            first = False
        else:
            i = 0
            while True:
                digits[i] += 1
                if digits[i] < q:
                    break
                digits[i] = 0
                i += 1
        m[:] = digits
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
                # divide a scratch copy by the monic prime; m survives a miss
                w[: mdeg + 1] = m[: mdeg + 1]
                for pos in range(mdeg - d, -1, -1):
                    c = w[pos + d]
                    quo[pos] = c
                    if c:
                        if modp:
                            for jj in range(d):
                                w[pos + jj] = (w[pos + jj] - c * pc[off + jj]) % p
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
        tau_total += tau
        _classify(nf, fdeg, fexp, any_rep, ctx, counts, hist_degP, hist_omega)
    return (counts[0], counts[1], counts[2], counts[3], counts[4], counts[5],
            tau_total, hist_degP, hist_omega)
