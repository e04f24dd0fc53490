import random

import pytest

from smarpoly.errors import CapExceeded, DomainError, FieldMismatch, ParseError
from smarpoly.gf import field_from_q
from smarpoly.poly import (
    Poly,
    delta,
    delta_inv,
    factorial_direct,
    factorial_product,
    monic_product,
    poly_divrem,
    poly_gcd,
    poly_mul,
    poly_powmod,
    valuation,
    valuation_of_factorial,
)

RNG_SEED = 902210


def _random_poly(spec, rng, max_deg):
    return delta_inv(spec, rng.randrange(spec.q ** (max_deg + 1)))


@pytest.mark.parametrize("q", [2, 3, 4, 9])
def test_ring_axioms_sampled(q):
    spec = field_from_q(q)
    rng = random.Random(RNG_SEED + q)
    for _ in range(150):
        a = _random_poly(spec, rng, 5)
        b = _random_poly(spec, rng, 5)
        c = _random_poly(spec, rng, 5)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == Poly.zero(spec)


@pytest.mark.parametrize("q", [2, 3, 5, 9])
def test_delta_bijection(q):
    spec = field_from_q(q)
    seen = set()
    for m in range(q ** 3):
        f = delta_inv(spec, m)
        assert delta(f) == m == f.delta
        assert f not in seen
        seen.add(f)
    # monic degree-d polynomials occupy [q^d, 2 q^d)
    for d in range(3):
        for m in range(q ** d, 2 * q ** d):
            assert delta_inv(spec, m).is_monic


def test_delta_examples_over_f2():
    spec = field_from_q(2)
    assert Poly.parse(spec, "t^2+1").delta == 5
    assert delta_inv(spec, 6).literal() == "t^2+t"
    assert Poly.zero(spec).delta == 0
    assert Poly.one(spec).delta == 1


def test_delta_uses_base_q_not_p():
    spec = field_from_q(9)
    assert Poly.t(spec).delta == 9
    assert Poly.parse(spec, "t+1").delta == 10


@pytest.mark.parametrize("q", [2, 3, 9])
def test_divrem_invariant(q):
    spec = field_from_q(q)
    rng = random.Random(RNG_SEED + 17 * q)
    for _ in range(200):
        a = _random_poly(spec, rng, 8)
        b = _random_poly(spec, rng, 4)
        if b.is_zero:
            continue
        quo, rem = poly_divrem(a, b)
        assert quo * b + rem == a
        assert rem.degree < b.degree


def test_divrem_by_zero():
    spec = field_from_q(3)
    with pytest.raises(DomainError):
        poly_divrem(Poly.t(spec), Poly.zero(spec))


@pytest.mark.parametrize("q", [2, 3, 4])
def test_gcd_properties(q):
    spec = field_from_q(q)
    rng = random.Random(RNG_SEED + 31 * q)
    for _ in range(100):
        a = _random_poly(spec, rng, 6)
        b = _random_poly(spec, rng, 6)
        g = poly_gcd(a, b)
        if a.is_zero and b.is_zero:
            assert g.is_zero
            continue
        assert g.is_monic
        assert poly_divrem(a, g)[1].is_zero or a.is_zero
        assert poly_divrem(b, g)[1].is_zero or b.is_zero


def test_powmod_matches_pow():
    spec = field_from_q(3)
    f = Poly.parse(spec, "t^3+2*t+1")
    m = Poly.parse(spec, "t^2+1")
    assert poly_powmod(f, 11, m) == (f ** 11) % m


def test_literal_round_trip():
    spec = field_from_q(3)
    for text in ["0", "1", "2", "t", "2*t", "t^2+2*t+1", "t^7+t^3+2"]:
        assert Poly.parse(spec, text).literal() == text


def test_literal_accepts_json_array_form():
    spec = field_from_q(2)
    f = Poly.parse(spec, "[1, 0, 1]")
    assert f.literal() == "t^2+1"
    assert Poly.parse(spec, "[]").is_zero


def test_parse_rejects_garbage():
    spec = field_from_q(2)
    for text in ["t^", "t^^2", "1+", "x^2", "t**2", ""]:
        with pytest.raises(ParseError):
            Poly.parse(spec, text)


def test_parse_rejects_out_of_range_indices():
    # coefficients are canonical element indices, not arbitrary residues
    spec = field_from_q(3)
    with pytest.raises(ParseError):
        Poly.parse(spec, "4*t+5")


def test_mixed_fields_raise():
    a = Poly.t(field_from_q(2))
    b = Poly.t(field_from_q(3))
    with pytest.raises(FieldMismatch):
        _ = a + b


def test_monic_normalization():
    spec = field_from_q(5)
    f = Poly.parse(spec, "3*t^2+t+4")
    unit, m = f.monic()
    assert m.is_monic and Poly.const(spec, unit) * m == f


def test_factorial_small_values_f2():
    spec = field_from_q(2)
    # (t)! = product of t - g over g in {0, 1} = t(t+1) = t^2+t
    assert factorial_direct(Poly.t(spec)).literal() == "t^2+t"
    # (t+1)! = (t+1)t(1) = t^2+t
    assert factorial_direct(Poly.parse(spec, "t+1")).literal() == "t^2+t"
    assert factorial_direct(Poly.one(spec)).literal() == "1"
    assert factorial_direct(Poly.zero(spec)).literal() == "1"


def test_factorial_small_values_f3():
    spec = field_from_q(3)
    # (t)! runs over g in {0,1,2}: t(t-1)(t-2) = t^3 - t over F_3
    assert factorial_direct(Poly.t(spec)).literal() == "t^3+2*t"


@pytest.mark.parametrize("q", [2, 3, 4, 9])
def test_factorial_methods_agree_sampled(q):
    spec = field_from_q(q)
    rng = random.Random(RNG_SEED + 7 * q)
    codes = [rng.randrange(180) for _ in range(25)]
    for m in codes:
        f = delta_inv(spec, m)
        assert factorial_direct(f) == factorial_product(f)


def test_factorial_respects_cap():
    spec = field_from_q(2)
    with pytest.raises(CapExceeded):
        factorial_direct(delta_inv(spec, 100), cap=50)


def test_monic_product_degree():
    # product over all monic polynomials of degree j: degree is j * q^j
    for q in (2, 3):
        spec = field_from_q(q)
        for j in (1, 2):
            assert monic_product(spec, j).degree == j * q ** j


@pytest.mark.parametrize("q", [2, 3])
def test_valuation_basics(q):
    spec = field_from_q(q)
    t = Poly.t(spec)
    f = t ** 3 * (t + Poly.one(spec)) ** 2
    assert valuation(t, f) == 3
    assert valuation(t + Poly.one(spec), f) == 2
    assert valuation(t + Poly.one(spec), t) == 0
    with pytest.raises(DomainError):
        valuation(Poly.one(spec), f)
    with pytest.raises(DomainError):
        valuation(t, Poly.zero(spec))


def test_valuation_of_factorial_floor_sum():
    # delta = 20, q = 2, d = 1: 10 + 5 + 2 + 1 = 18
    assert valuation_of_factorial(1, 20, 2) == 18
    assert valuation_of_factorial(2, 20, 2) == 5 + 1
    assert valuation_of_factorial(3, 20, 2) == 2
    assert valuation_of_factorial(5, 20, 2) == 0
    with pytest.raises(DomainError):
        valuation_of_factorial(0, 20, 2)
