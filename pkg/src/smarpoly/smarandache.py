"""The Smarandache function S on F_q[t] and its structure theory.

S(f) is the delta-smallest polynomial m with f dividing m!.  For prime
powers it has a closed form through repunit decompositions in base q^d;
for general f it is the delta-maximum of S over the prime power factors.
Two slow oracles that work straight from the definition live here too,
so the closed form never has to be trusted on faith.
"""

import functools
from dataclasses import dataclass

from .config import oracle_definition_cap, oracle_valuation_cap
from .errors import CapExceeded, DomainError
from .factor import factorize, is_irreducible
from .poly import (
    Poly,
    delta_inv,
    factorial_direct,
    valuation_of_factorial,
)

__all__ = [
    "RepDecomposition",
    "repunit",
    "rep_decompose",
    "rep_compose",
    "s_prime_power",
    "s",
    "s_oracle_definition",
    "s_oracle_valuation",
    "s_iterate",
    "distance_to_fixed",
    "fixed_points",
    "inverse_image_prime_powers",
    "check_delta_contraction",
]


# -- repunit decompositions -------------------------------------------------------


def repunit(N, j):
    """b_j = (N^j - 1)/(N - 1) = 1 + N + ... + N^(j-1)."""
    if j < 1:
        raise DomainError("repunit index must be at least 1")
    return (N**j - 1) // (N - 1)


@dataclass(frozen=True)
class RepDecomposition:
    """e = sum of c*b_j over terms, positions j strictly decreasing.

    Every coefficient is in 1..N-1 except possibly the last, which may
    equal N (exactly when it closes the sum with remainder zero).
    """

    base: int
    terms: tuple  # ((c, j), ...) with j strictly decreasing


def rep_decompose(N, e):
    """Greedy repunit decomposition of e >= 1 in base N >= 2.

    Taking the largest b_j <= e and the largest feasible coefficient at
    each step always lands in the canonical form described above; a
    coefficient can only reach N when the remainder it leaves is zero.
    """
    if N < 2:
        raise DomainError("repunit base must be at least 2")
    if e < 1:
        raise DomainError("can only decompose positive integers")
    terms = []
    while e > 0:
        j = 1
        while repunit(N, j + 1) <= e:
            j += 1
        c = e // repunit(N, j)
        # b_(j+1) = N*b_j + 1 > e forces c <= N, and c = N leaves rest 0
        terms.append((c, j))
        e -= c * repunit(N, j)
    return RepDecomposition(N, tuple(terms))


def rep_compose(dec):
    """Inverse of rep_decompose, with shape validation."""
    N = dec.base
    total = 0
    prev_j = None
    for i, (c, j) in enumerate(dec.terms):
        if j < 1 or (prev_j is not None and j >= prev_j):
            raise DomainError("positions must decrease strictly and stay >= 1")
        last = i == len(dec.terms) - 1
        if not (1 <= c <= (N if last else N - 1)):
            raise DomainError("coefficient out of range")
        total += c * repunit(N, j)
        prev_j = j
    return total


# -- the closed form ---------------------------------------------------------------


def s_prime_power(P, e, check=True):
    """S(P^e) for monic irreducible P.

    The delta code of the answer is sum of c_i * q^(d*j_i) over the greedy
    repunit decomposition of e in base q^d.  A trailing coefficient equal
    to N carries into the next position; plain integer addition does that
    on its own.
    """
    if e < 1:
        raise DomainError("exponent must be at least 1")
    spec = P.spec
    if P.degree < 1 or not P.is_monic:
        raise DomainError("expected a monic irreducible")
    if check and not is_irreducible(P):
        raise DomainError(f"{P.literal()} is not irreducible")
    d = P.degree
    N = spec.q**d
    code = 0
    for c, j in rep_decompose(N, e).terms:
        code += c * spec.q ** (d * j)
    return delta_inv(spec, code)


def s(f, seed=None):
    """S(f): delta-maximum of S over the prime power factors.

    S(0) = S(unit) = 0 by convention, and S(a*f) = S(f) for units a.
    """
    if f.degree < 1:
        return Poly.zero(f.spec)
    best = Poly.zero(f.spec)
    for P, e in factorize(f, seed=seed).factors:
        cand = s_prime_power(P, e, check=False)
        if cand.delta > best.delta:
            best = cand
    return best


# -- oracles -----------------------------------------------------------------------


def s_oracle_definition(f, cap=None):
    """Scan m = 0, 1, 2, ... in delta order until f divides m!.

    Materializes every factorial, so it only reaches small arguments; the
    cap bounds the number of candidates tried.
    """
    if f.is_zero:
        raise DomainError("S is undefined at 0")
    spec = f.spec
    if f.degree < 1:
        return Poly.zero(spec)
    _, fm = f.monic()
    limit = oracle_definition_cap() if cap is None else cap
    for mcode in range(limit + 1):
        if (_factorial_at(spec, mcode) % fm).is_zero:
            return delta_inv(spec, mcode)
    raise CapExceeded(f"no m with delta(m) <= {limit} has f | m!")


@functools.lru_cache(maxsize=4096)
def _factorial_at(spec, mcode):
    # consecutive oracle scans revisit the same candidates; factorials are
    # immutable so sharing them is safe
    return factorial_direct(delta_inv(spec, mcode))


def s_oracle_valuation(f, cap=None, seed=None):
    """S via factorization plus a linear search on the valuation formula.

    For each prime power P^e the minimal viable delta code is a multiple
    of q^d, so it walks x = 1, 2, ... until the valuation of (q^d * x)!
    at P reaches e.  Independent of the repunit closed form.
    """
    if f.is_zero:
        raise DomainError("S is undefined at 0")
    spec = f.spec
    if f.degree < 1:
        return Poly.zero(spec)
    limit = oracle_valuation_cap() if cap is None else cap
    q = spec.q
    best = 0
    for P, e in factorize(f, seed=seed).factors:
        d = P.degree
        step = q**d
        x = 1
        while valuation_of_factorial(d, step * x, q) < e:
            x += 1
            if step * x > limit:
                raise CapExceeded(f"valuation scan passed {limit}")
        best = max(best, step * x)
    return delta_inv(spec, best)


# -- iteration ----------------------------------------------------------------------


def fixed_points(spec):
    """All f of positive degree with S(f) = f."""
    t = Poly.t(spec)
    if spec.q == 2:
        return [t, t * t]
    return [t]


def s_iterate(f, n, seed=None):
    """[f, S(f), S(S(f)), ...] with n applications."""
    if n < 0:
        raise DomainError("iteration count must be nonnegative")
    out = [f]
    for _ in range(n):
        f = s(f, seed=seed)
        out.append(f)
    return out


def distance_to_fixed(f, seed=None):
    """Number of S-applications needed to land on a fixed point."""
    if f.degree < 1:
        raise DomainError("iteration to a fixed point needs degree >= 1")
    guard = f.degree + 2  # the distance never exceeds 1 + deg f
    steps = 0
    while steps <= guard:
        g = s(f, seed=seed)
        if g == f:
            return steps
        f = g
        steps += 1
    raise AssertionError("iteration failed to settle within its proven bound")


# -- inverse images -----------------------------------------------------------------


def inverse_image_prime_powers(f):
    """All (d, e_lo, e_hi) with S(P^e) = f for every monic irreducible P
    of degree d and every e in [e_lo, e_hi].

    Nonempty only when t divides f.  For each d with q^d dividing
    delta(f), the base-q^d digits of delta(f) read off an exponent
    e_0 = sum n_j b_j, and the preimage is the interval of length j_k
    ending at e_0, where j_k is the lowest occupied position.
    """
    spec = f.spec
    q = spec.q
    code = f.delta
    if f.degree < 1 or code % q != 0:
        return []
    out = []
    d = 1
    while q**d <= code:
        N = q**d
        if code % N == 0:
            digits = []
            m = code
            j = 0
            while m:
                m, r = divmod(m, N)
                if r:
                    digits.append((r, j))
                j += 1
            e0 = sum(c * repunit(N, j) for c, j in digits)
            j_low = digits[0][1]
            out.append((d, e0 - (j_low - 1), e0))
        d += 1
    return out


# -- the contraction inequality ------------------------------------------------------


def check_delta_contraction(f, seed=None):
    """Status of q * delta(S(f)) <= delta(f).

    Holds for every f of positive degree whose monic part is neither
    irreducible nor the square of a linear, with equality exactly at
    f = t^3 over q in {2, 3}.  Returns "inequality_strict", "equality"
    or "not_applicable".
    """
    if f.degree < 1:
        return "not_applicable"
    fac = factorize(f, seed=seed)
    if len(fac.factors) == 1:
        P, e = fac.factors[0]
        if e == 1 or (e == 2 and P.degree == 1):
            return "not_applicable"
    lhs = f.spec.q * s(f, seed=seed).delta
    rhs = f.delta
    if lhs > rhs:
        raise AssertionError("contraction inequality violated")
    return "equality" if lhs == rhs else "inequality_strict"
