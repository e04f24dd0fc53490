"""Exhaustive classification of monic degree-n polynomials.

T is the exceptional set where S(f) differs from t raised to the degree
of the largest irreducible factor.  T1 (many distinct factors), T2 (a
repeated factor of large degree) and T3 (a high power of a small factor)
are threshold classes defined on all monic f of degree n; T4 is what is
left of T after removing them.  A census enumerates every monic f of
degree n, tallies all five classes plus histograms, and compares the
tallies against the counting bounds that apply at the given (q, n, r).
"""

import json
import math
import os
import time
from array import array
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import gf
from .config import census_cap
from .errors import CapExceeded, DomainError
from .factor import factorize, sieve_irreducibles
from .poly import valuation_of_factorial

if os.environ.get("SMARPOLY_PURE") == "1":
    from . import _kernel_py as _kernel

    KERNEL_NAME = "pure"
else:
    try:
        from . import _censuskernel as _kernel

        KERNEL_NAME = "compiled"
    except ImportError:
        from . import _kernel_py as _kernel

        KERNEL_NAME = "pure"

from . import _kernel_py

__all__ = [
    "CensusParams",
    "Classification",
    "CensusReport",
    "CSV_HEADER",
    "KERNEL_NAME",
    "thresholds",
    "in_T",
    "classify",
    "lemma_s4_check",
    "run_census",
    "tau_sum",
]

# int64 kernels cannot hold q^n at or beyond 2^62
_KERNEL_LIMIT = 1 << 62

CSV_HEADER = ("q,n,r,mode,total,T,T1,T2,T3,T4,B,D,"
              "bound_T1,bound_T2,bound_T3,hyp_flags,s4_violations,wall_ms")


@dataclass(frozen=True)
class CensusParams:
    spec: object
    n: int
    r: Fraction
    mode: str = "standard"

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("census degree must be at least 1")
        r = Fraction(self.r)
        object.__setattr__(self, "r", r)
        if r < 1:
            raise DomainError("r must be at least 1")
        if self.mode not in ("standard", "tight"):
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.mode == "tight" and self.spec.q < 3:
            raise DomainError("tight thresholds need q >= 3")


@dataclass(frozen=True)
class Classification:
    in_T: bool
    in_T1: bool
    in_T2: bool
    in_T3: bool
    in_T4: bool
    max_irr_deg: int
    omega: int


def thresholds(params):
    """(B, D).  loglog q^n = ln(n ln q); standard B, D = 3rL, 2rL and
    tight B, D = 2rL, rL."""
    L = math.log(params.n * math.log(params.spec.q))
    rf = float(params.r)
    if params.mode == "tight":
        return 2.0 * rf * L, rf * L
    return 3.0 * rf * L, 2.0 * rf * L


def _s4_bound(D, q):
    if D <= 0.0:
        return float("-inf")
    return D + math.log(D) / math.log(q)


def _hyp_flags(params, D):
    """Which of the reported bounds are backed at this (q, n, r, mode).

    t1 covers the bound_T1 column; t1r marks the sharper q^n/(ln q^n)^r
    form for T1; t2 and t3 cover their columns.
    """
    n, r, q = params.n, params.r, params.spec.q
    if params.mode == "tight":
        t1 = t1r = q >= 3 and n >= 4 and r >= 3
        t2 = D >= 12.0
        t3 = D >= 19.0
    else:
        t1 = True
        t1r = n >= 3 and r >= 2
        t2 = D >= 4.0
        t3 = D >= 8.0
    return "t1=%d;t1r=%d;t2=%d;t3=%d" % (t1, t1r, t2, t3)


# -- single-polynomial classification ------------------------------------------------


def _factor_shape(f):
    fac = factorize(f)
    deg_max = fac.factors[-1][0].degree
    return fac, deg_max


def in_T(f):
    """S(f) != t^(deg of largest irreducible factor)?

    Tested through valuations: membership holds exactly when some P^e | f
    needs more of (t^degmax)! than it has.
    """
    if not f.is_monic:
        raise DomainError("T membership is defined for monic polynomials")
    if f.degree < 1:
        raise DomainError("T membership needs positive degree")
    q = f.spec.q
    fac, deg_max = _factor_shape(f)
    for P, e in fac.factors:
        if e >= 2 and valuation_of_factorial(P.degree, q**deg_max, q) < e:
            return True
    return False


def classify(f, params):
    if f.degree != params.n:
        raise DomainError(f"expected degree {params.n}, got {f.degree}")
    if not f.is_monic:
        raise DomainError("census classes contain monic polynomials only")
    B, D = thresholds(params)
    q = params.spec.q
    fac, deg_max = _factor_shape(f)
    om = len(fac.factors)
    t = False
    t2 = False
    t3 = False
    for P, e in fac.factors:
        d = P.degree
        if e >= 2:
            if valuation_of_factorial(d, q**deg_max, q) < e:
                t = True
            if d > D:
                t2 = True
        if e >= D and d <= D:
            t3 = True
    t1 = om > B
    return Classification(t, t1, t2, t3, t and not (t1 or t2 or t3), deg_max, om)


def lemma_s4_check(f, params):
    """For a T4 member: is deg of the largest irreducible factor below
    D + ln D / ln q?  (It always is; a False return means a bug.)"""
    cls = classify(f, params)
    if not cls.in_T4:
        raise DomainError("not a T4 member")
    _, D = thresholds(params)
    return cls.max_irr_deg < _s4_bound(D, params.spec.q)


# -- the census engine ----------------------------------------------------------------


@dataclass
class CensusReport:
    q: int
    n: int
    r: Fraction
    mode: str
    total: int
    count_T: int
    count_T1: int
    count_T2: int
    count_T3: int
    count_T4: int
    B: float
    D: float
    bound_T1: float
    bound_T2: float
    bound_T3: float
    hyp_flags: str
    s4_violations: int
    wall_ms: int
    tau_sum: int
    hist_deg_max_irr: dict
    hist_omega: dict
    shards: int
    kernel: str
    modulus: str = ""

    def csv_row(self):
        return ",".join([
            str(self.q), str(self.n), str(self.r), self.mode,
            str(self.total), str(self.count_T), str(self.count_T1),
            str(self.count_T2), str(self.count_T3), str(self.count_T4),
            repr(self.B), repr(self.D), repr(self.bound_T1),
            repr(self.bound_T2), repr(self.bound_T3), self.hyp_flags,
            str(self.s4_violations), str(self.wall_ms),
        ])

    def to_dict(self):
        return {
            "q": self.q, "n": self.n, "r": str(self.r), "mode": self.mode,
            "modulus": self.modulus,
            "total": self.total, "T": self.count_T, "T1": self.count_T1,
            "T2": self.count_T2, "T3": self.count_T3, "T4": self.count_T4,
            "B": self.B, "D": self.D,
            "bound_T1": self.bound_T1, "bound_T2": self.bound_T2,
            "bound_T3": self.bound_T3, "hyp_flags": self.hyp_flags,
            "s4_violations": self.s4_violations, "wall_ms": self.wall_ms,
            "tau_sum": self.tau_sum,
            "hist_deg_max_irr": {str(k): v for k, v in self.hist_deg_max_irr.items()},
            "hist_omega": {str(k): v for k, v in self.hist_omega.items()},
            "shards": self.shards, "kernel": self.kernel,
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def _build_ctx(params):
    spec = params.spec
    q, n = spec.q, params.n
    B, D = thresholds(params)
    primes = sieve_irreducibles(spec, n // 2)
    ctx = {
        "kind": "",
        "q": q,
        "n": n,
        "p": spec.p,
        "B": B,
        "D": D,
        "s4_bound": _s4_bound(D, q),
        "qpow": array("q", [q**i for i in range(n + 1)]),
        "prime_degs": array("i", [P.degree for P in primes]),
    }
    if q == 2:
        ctx["kind"] = "q2"
        ctx["prime_codes"] = array("Q", [P.delta for P in primes])
    else:
        offs = array("i")
        coeffs = array("H")
        pos = 0
        for P in primes:
            offs.append(pos)
            coeffs.extend(P.coeffs)
            pos += len(P.coeffs)
        offs.append(pos)
        ctx["prime_offs"] = offs
        ctx["prime_coeffs"] = coeffs
        if spec.k == 1:
            ctx["kind"] = "modp"
        else:
            tabs = gf.tables(spec)  # raises for q beyond the table limit
            ctx["kind"] = "table"
            ctx["mul"] = tabs["mul"]
            ctx["sub"] = tabs["sub"]
    return ctx


def _run_blocks(ctx, total, shards, threads, kernel):
    bounds = [(i * total) // shards for i in range(shards + 1)]
    blocks = [(bounds[i], bounds[i + 1]) for i in range(shards)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(lambda b: kernel.census_block(ctx, b[0], b[1]), blocks))
    else:
        results = [kernel.census_block(ctx, a, b) for a, b in blocks]
    agg = [0] * 7
    hist_degP = [0] * (ctx["n"] + 1)
    hist_omega = [0] * (ctx["n"] + 1)
    for res in results:
        for i in range(7):
            agg[i] += res[i]
        for i in range(ctx["n"] + 1):
            hist_degP[i] += res[7][i]
            hist_omega[i] += res[8][i]
    return agg, hist_degP, hist_omega


def run_census(params, shards=1, threads=1):
    spec = params.spec
    q, n = spec.q, params.n
    total = q**n
    if total > census_cap():
        raise CapExceeded(
            f"census over {total} polynomials exceeds the cap; "
            "raise SMARPOLY_CENSUS_CAP if this size is intended"
        )
    if shards < 1 or threads < 1:
        raise DomainError("shards and threads must be positive")
    kernel = _kernel
    name = KERNEL_NAME
    if total >= _KERNEL_LIMIT and kernel is not _kernel_py:
        kernel = _kernel_py  # compiled counters are 64-bit
        name = "pure"
    t0 = time.perf_counter()
    ctx = _build_ctx(params)
    agg, hist_degP, hist_omega = _run_blocks(ctx, total, shards, threads, kernel)
    wall_ms = int((time.perf_counter() - t0) * 1000)
    B, D = ctx["B"], ctx["D"]
    log_qn = n * math.log(q)
    refined = float(total) / log_qn ** float(params.r)
    bound1 = refined if params.mode == "tight" else 3.0 * refined
    return CensusReport(
        q=q, n=n, r=params.r, mode=params.mode, total=total,
        count_T=agg[0], count_T1=agg[1], count_T2=agg[2], count_T3=agg[3],
        count_T4=agg[4], B=B, D=D,
        bound_T1=bound1, bound_T2=refined, bound_T3=refined,
        hyp_flags=_hyp_flags(params, D),
        s4_violations=agg[5], wall_ms=wall_ms, tau_sum=agg[6],
        hist_deg_max_irr={i: c for i, c in enumerate(hist_degP) if c},
        hist_omega={i: c for i, c in enumerate(hist_omega) if c},
        shards=shards, kernel=name,
        modulus=gf.modulus_str(spec.modulus) if spec.modulus else "",
    )


def tau_sum(spec, n):
    """Sum of tau over all monic degree-n polynomials, by enumeration."""
    params = CensusParams(spec, n, Fraction(1))
    return run_census(params).tau_sum
