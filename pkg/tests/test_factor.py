import random

import pytest

from smarpoly.errors import DomainError
from smarpoly.factor import (
    count_monic_irreducibles,
    derivative,
    factorize,
    is_irreducible,
    max_irreducible_factor,
    omega,
    sieve_irreducibles,
    tau,
)
from smarpoly.gf import field_from_q
from smarpoly.poly import Poly, delta_inv, poly_mul

RNG_SEED = 411804


def _random_poly(spec, rng, max_deg):
    return delta_inv(spec, rng.randrange(spec.q ** (max_deg + 1)))


@pytest.mark.parametrize("q", [2, 3])
def test_trial_division_equals_cantor_zassenhaus(q):
    spec = field_from_q(q)
    for m in range(1, q ** 7):
        f = delta_inv(spec, m)
        a = factorize(f, method="trial", cache=False)
        b = factorize(f, method="cantor_zassenhaus", cache=False)
        assert a.unit == b.unit and a.factors == b.factors, m


@pytest.mark.parametrize("q", [2, 3, 4, 9, 25])
def test_factorization_round_trip_random(q):
    spec = field_from_q(q)
    rng = random.Random(RNG_SEED + q)
    degs = [1, 2, 3, 5, 8, 13, 21, 34, 64]
    for deg in degs:
        f = delta_inv(spec, rng.randrange(spec.q ** deg, spec.q ** (deg + 1)))
        fac = factorize(f, seed=7, cache=False)
        assert fac.expand() == f
        for P, e in fac.factors:
            assert e >= 1
            assert P.is_monic
            assert is_irreducible(P)
        # factors come sorted by delta code and are distinct
        deltas = [P.delta for P, _ in fac.factors]
        assert deltas == sorted(deltas) and len(set(deltas)) == len(deltas)


def test_factorize_unit_and_zero():
    spec = field_from_q(5)
    fac = factorize(Poly.const(spec, 3))
    assert fac.unit == 3 and fac.factors == ()
    with pytest.raises(DomainError):
        factorize(Poly.zero(spec))


def test_factorize_is_deterministic_with_seed():
    spec = field_from_q(9)
    rng = random.Random(RNG_SEED)
    f = _random_poly(spec, rng, 20)
    a = factorize(f, seed=3, cache=False)
    b = factorize(f, seed=3, cache=False)
    assert a == b


def test_factorize_cache_returns_same_result():
    spec = field_from_q(2)
    f = Poly.parse(spec, "t^6+t^2+1")
    a = factorize(f)
    b = factorize(f)
    assert a == b
    # different methods share one cache entry, keyed only by the field and code
    c = factorize(f, method="trial")
    assert c == a


def test_repeated_factor_wilderness():
    # inseparable-style inputs exercise the p-th root path
    spec = field_from_q(3)
    t = Poly.t(spec)
    f = (t ** 3 + Poly.const(spec, 2) * t + Poly.one(spec)) ** 3
    fac = factorize(f, cache=False)
    assert fac.expand() == f
    assert all(e % 3 == 0 or e == 1 for _, e in fac.factors) or fac.expand() == f


@pytest.mark.parametrize("q", [2, 3, 4])
def test_is_irreducible_against_enumeration(q):
    spec = field_from_q(q)
    for d in (1, 2, 3, 4):
        primes = {P.delta for P in sieve_irreducibles(spec, d) if P.degree == d}
        for m in range(q ** d, 2 * q ** d):
            f = delta_inv(spec, m)
            # reducible iff some earlier monic of positive degree divides it
            divisible = any(
                (f % delta_inv(spec, k)).is_zero
                for k in range(q, m)
                if delta_inv(spec, k).is_monic and delta_inv(spec, k).degree < d
            )
            assert is_irreducible(f) == (not divisible)
            assert (m in primes) == (not divisible)


def test_is_irreducible_rejects_constants_and_nonmonic_ok():
    spec = field_from_q(3)
    assert not is_irreducible(Poly.one(spec))
    assert not is_irreducible(Poly.zero(spec))
    # scalar multiples of irreducibles count as irreducible
    f = Poly.parse(spec, "2*t^2+2")  # 2 (t^2+1), t^2+1 irreducible over F_3
    assert is_irreducible(f)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 8),
                                 (3, 1), (3, 2), (3, 6), (5, 3), (9, 2)])
def test_count_monic_irreducibles_moebius(q, n):
    # Gauss necklace counts: sum over d | n of d * N_d(q) = q^n
    total = sum(d * count_monic_irreducibles(q, d)
                for d in range(1, n + 1) if n % d == 0)
    assert total == q ** n


def test_known_irreducible_counts_f2():
    assert [count_monic_irreducibles(2, n) for n in range(1, 7)] == \
        [2, 1, 2, 3, 6, 9]


@pytest.mark.parametrize("q", [2, 3, 9])
def test_derivative_product_rule(q):
    spec = field_from_q(q)
    rng = random.Random(RNG_SEED + 5 * q)
    for _ in range(60):
        a = _random_poly(spec, rng, 6)
        b = _random_poly(spec, rng, 6)
        lhs = derivative(poly_mul(a, b))
        rhs = poly_mul(derivative(a), b) + poly_mul(a, derivative(b))
        assert lhs == rhs


def test_derivative_kills_pth_powers():
    spec = field_from_q(3)
    f = Poly.parse(spec, "t^2+2*t+1") ** 3
    assert derivative(f).is_zero


def test_omega_tau_max_factor():
    spec = field_from_q(2)
    t = Poly.t(spec)
    one = Poly.one(spec)
    f = t ** 2 * (t + one) * (t ** 2 + t + one)
    assert omega(f) == 3
    assert tau(f) == 3 * 2 * 2
    assert max_irreducible_factor(f).literal() == "t^2+t+1"


def test_sieve_matches_formula_small():
    for q in (2, 3, 4):
        spec = field_from_q(q)
        per = {}
        for P in sieve_irreducibles(spec, 5):
            assert P.is_monic
            per[P.degree] = per.get(P.degree, 0) + 1
        for d in range(1, 6):
            assert per.get(d, 0) == count_monic_irreducibles(q, d)
