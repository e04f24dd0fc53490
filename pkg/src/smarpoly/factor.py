"""Irreducibility testing and factorization over F_q[t].

Two factorization routes are kept side by side: plain trial division in
delta order (slow, obviously correct) and Cantor-Zassenhaus (squarefree
split, distinct-degree, randomized equal-degree).  Both return the same
canonical form, so each serves as a check on the other.
"""

import random
import threading
from collections import OrderedDict
from dataclasses import dataclass

from .config import census_cap, default_seed
from .errors import CapExceeded, DomainError
from .poly import (
    Poly,
    delta,
    poly_gcd,
    poly_powmod,
)

__all__ = [
    "Factorization",
    "derivative",
    "is_irreducible",
    "sieve_irreducibles",
    "factorize",
    "omega",
    "tau",
    "max_irreducible_factor",
    "count_monic_irreducibles",
]


# -- derivative ----------------------------------------------------------------


def derivative(f):
    """Formal derivative.  Characteristic p kills every p-th term."""
    spec = f.spec
    p = spec.p
    coeffs = []
    for i in range(1, len(f.coeffs)):
        m = i % p
        # the integer multiple m*c equals field mul by the element with
        # index m, since m < p sits in the prime subfield
        coeffs.append(spec.mul(m, f.coeffs[i]) if m else 0)
    return Poly(spec, coeffs)


# -- irreducibility (Rabin) ------------------------------------------------------


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f):
    """Rabin test.  Units and the zero polynomial are not irreducible."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    _, f = f.monic()
    spec = f.spec
    q = spec.q
    t = Poly.t(spec)
    # Frobenius chain: ws[i] = t^(q^i) mod f
    ws = [t % f]
    for _ in range(n):
        ws.append(poly_powmod(ws[-1], q, f))
    if ws[n] != ws[0]:
        return False
    for ell in _prime_divisors(n):
        g = poly_gcd(ws[n // ell] - t, f)
        if g.degree != 0:
            return False
    return True


# -- sieve ----------------------------------------------------------------------


def sieve_irreducibles(spec, max_deg):
    """All monic irreducibles of degree 1..max_deg, in delta order.

    Eratosthenes over delta codes: walk monic polynomials in increasing
    delta order, and whenever an unmarked one turns up, mark every monic
    multiple within range.
    """
    if max_deg < 1:
        return []
    q = spec.q
    size = 2 * q**max_deg
    if size > census_cap():
        raise CapExceeded(
            f"sieve needs {size} slots, over the census cap; "
            "raise SMARPOLY_CENSUS_CAP to allow it"
        )
    composite = bytearray(size)
    out = []
    for d in range(1, max_deg + 1):
        lo = q**d
        for code in range(lo, 2 * lo):
            if composite[code]:
                continue
            P = Poly.from_delta(spec, code)
            out.append(P)
            # mark P*g for every monic g with deg g in 1..max_deg-d
            for gd in range(1, max_deg - d + 1):
                glo = q**gd
                for gcode in range(glo, 2 * glo):
                    m = (P * Poly.from_delta(spec, gcode)).delta
                    composite[m] = 1
    return out


# -- factorization ---------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """unit * prod(P_i ** e_i) with the P_i monic irreducible, delta-sorted."""

    spec: object
    unit: int
    factors: tuple  # ((Poly, int), ...)

    def expand(self):
        out = Poly.const(self.spec, self.unit)
        for P, e in self.factors:
            out = out * P**e
        return out


_CACHE_MAX = 1 << 16
_CACHE_DEG_MAX = 64
_cache = OrderedDict()
_cache_lock = threading.Lock()


def _cache_get(key):
    with _cache_lock:
        hit = _cache.get(key)
        if hit is not None:
            _cache.move_to_end(key)
        return hit


def _cache_put(key, val):
    with _cache_lock:
        _cache[key] = val
        _cache.move_to_end(key)
        while len(_cache) > _CACHE_MAX:
            _cache.popitem(last=False)


def factorize(f, method="cantor_zassenhaus", seed=None, cache=True):
    """Factor f into unit * prod of monic irreducibles.

    method "cantor_zassenhaus" (default) or "trial".  The randomized parts
    of Cantor-Zassenhaus draw from random.Random(seed), so equal seeds give
    identical runs; the canonical result does not depend on the seed.
    """
    if f.is_zero:
        raise DomainError("cannot factor the zero polynomial")
    spec = f.spec
    if f.degree == 0:
        return Factorization(spec, f.coeffs[0], ())
    unit, m = f.monic()
    key = (spec, m.delta)
    if cache and m.degree <= _CACHE_DEG_MAX:
        hit = _cache_get(key)
        if hit is not None:
            return Factorization(spec, unit, hit)
    if method == "trial":
        factors = _trial_division(m)
    elif method == "cantor_zassenhaus":
        factors = _cantor_zassenhaus(m, seed)
    else:
        raise DomainError(f"unknown factorization method {method!r}")
    factors = tuple(sorted(factors, key=lambda pe: pe[0].delta))
    if cache and m.degree <= _CACHE_DEG_MAX:
        _cache_put(key, factors)
    return Factorization(spec, unit, factors)


def _trial_division(m):
    """Divide by monic polynomials in delta order.  Only irreducibles can
    ever divide, since their own factors were stripped first."""
    spec = m.spec
    q = spec.q
    factors = []
    tried = 0
    cap = census_cap()
    d = 1
    while m.degree > 0:
        if 2 * d > m.degree:
            factors.append((m, 1))
            break
        lo = q**d
        for code in range(lo, 2 * lo):
            tried += 1
            if tried > cap:
                raise CapExceeded(
                    "trial division exceeded the census cap; "
                    "use method cantor_zassenhaus or raise SMARPOLY_CENSUS_CAP"
                )
            c = Poly.from_delta(spec, code)
            quo, rem = divmod(m, c)
            if not rem.is_zero:
                continue
            e = 0
            while rem.is_zero:
                e += 1
                m = quo
                if m.degree < c.degree:
                    break
                quo, rem = divmod(m, c)
            factors.append((c, e))
            if 2 * d > m.degree:
                break
        d += 1
    return factors


def _pth_root(f):
    """Inverse of Frobenius on polynomials: g with g**p == f."""
    spec = f.spec
    p = spec.p
    assert all(c == 0 for i, c in enumerate(f.coeffs) if i % p)
    root_exp = p ** (spec.k - 1)  # a -> a^(p^(k-1)) inverts x -> x^p in F_q
    coeffs = []
    for i in range(0, len(f.coeffs), p):
        coeffs.append(spec.pow(f.coeffs[i], root_exp))
    return Poly(spec, coeffs)


def _sqf_list(f):
    """Squarefree decomposition in characteristic p.

    Returns [(g, e), ...] with f = prod g**e, the g squarefree, monic and
    pairwise coprime.  Multiplicities divisible by p are pulled out through
    p-th roots.
    """
    spec = f.spec
    out = []
    scale = 1
    while f.degree > 0:
        fp = derivative(f)
        if fp.is_zero:
            f = _pth_root(f)
            scale *= spec.p
            continue
        g = poly_gcd(f, fp)
        h = f // g
        i = 1
        while h.degree > 0:
            hh = poly_gcd(h, g)
            w = h // hh
            if w.degree > 0:
                out.append((w, i * scale))
            h = hh
            g = g // hh
            i += 1
        if g.degree == 0:
            break
        # leftover g collects the factors whose multiplicity p divides
        f = _pth_root(g)
        scale *= spec.p
    return out


def _distinct_degree(v):
    """Split squarefree monic v into (product of degree-d irreducibles, d)."""
    spec = v.spec
    q = spec.q
    t = Poly.t(spec)
    out = []
    w = t % v
    d = 0
    while v.degree > 0:
        d += 1
        if 2 * d > v.degree:
            out.append((v, v.degree))
            break
        w = poly_powmod(w, q, v)
        g = poly_gcd(w - t, v)
        if g.degree > 0:
            out.append((g, d))
            v = v // g
            w = w % v
    return out


def _random_poly_below(spec, deg_bound, rng):
    """Random nonzero polynomial of degree < deg_bound."""
    q = spec.q
    while True:
        coeffs = [rng.randrange(q) for _ in range(deg_bound)]
        f = Poly(spec, coeffs)
        if not f.is_zero:
            return f


def _equal_degree(g, d, rng):
    """Split squarefree monic g, all of whose irreducible factors have
    degree d, into those factors."""
    if g.degree == d:
        return [g]
    spec = g.spec
    q = spec.q
    while True:
        h = _random_poly_below(spec, g.degree, rng)
        u = poly_gcd(h, g)
        if 0 < u.degree < g.degree:
            split = u
        else:
            if spec.p == 2:
                # absolute trace of h down to F_2; kernel picks out half
                # of the factors on average
                acc = h % g
                cur = acc
                for _ in range(spec.k * d - 1):
                    cur = poly_powmod(cur, 2, g)
                    acc = acc + cur
                w = acc
            else:
                e = (q**d - 1) // 2
                w = poly_powmod(h, e, g) - Poly.one(spec)
            split = poly_gcd(w, g)
            if not 0 < split.degree < g.degree:
                continue
        other = g // split
        return _equal_degree(split, d, rng) + _equal_degree(other, d, rng)


def _cantor_zassenhaus(m, seed):
    rng = random.Random(default_seed() if seed is None else seed)
    factors = []
    for g, e in _sqf_list(m):
        for v, d in _distinct_degree(g):
            if v.degree == d:
                factors.append((v, e))
                continue
            for P in _equal_degree(v, d, rng):
                factors.append((P, e))
    return factors


# -- derived quantities -----------------------------------------------------------


def omega(f, seed=None):
    """Number of distinct monic irreducible factors."""
    if f.is_zero:
        raise DomainError("omega is undefined at 0")
    return len(factorize(f, seed=seed).factors)


def tau(f, seed=None):
    """Number of monic divisors: prod (e_i + 1)."""
    if f.is_zero:
        raise DomainError("tau is undefined at 0")
    out = 1
    for _, e in factorize(f, seed=seed).factors:
        out *= e + 1
    return out


def max_irreducible_factor(f, seed=None):
    """The delta-largest monic irreducible factor."""
    if f.degree < 1:
        raise DomainError("no irreducible factors below degree 1")
    return factorize(f, seed=seed).factors[-1][0]


def _mobius(n):
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def count_monic_irreducibles(q, n):
    """Gauss count: (1/n) * sum over d|n of mu(d) q^(n/d)."""
    if n < 1:
        raise DomainError("degree must be at least 1")
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _mobius(d) * q ** (n // d)
    assert total % n == 0
    return total // n
