import pytest

from smarpoly.errors import DomainError, ParseError
from smarpoly.gf import (
    DEFAULT_MODULI,
    FieldSpec,
    field_from_q,
    make_field,
    modulus_str,
    parse_field,
    parse_modulus,
)

FIELD_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_field_axioms_exhaustive(q):
    spec = field_from_q(q)
    els = range(q)
    for a in els:
        assert spec.add(a, 0) == a
        assert spec.mul(a, 1) == a
        assert spec.mul(a, 0) == 0
        assert spec.add(a, spec.neg(a)) == 0
        if a:
            assert spec.mul(a, spec.inv(a)) == 1
        for b in els:
            assert spec.add(a, b) == spec.add(b, a)
            assert spec.mul(a, b) == spec.mul(b, a)
            assert spec.sub(a, b) == spec.add(a, spec.neg(b))
            for c in els:
                assert spec.mul(a, spec.add(b, c)) == spec.add(
                    spec.mul(a, b), spec.mul(a, c))


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_multiplicative_group_order(q):
    spec = field_from_q(q)
    for a in range(1, q):
        assert spec.pow(a, q - 1) == 1
    # Frobenius fixes exactly the prime subfield
    fixed = [a for a in range(q) if spec.pow(a, spec.p) == a]
    assert len(fixed) == spec.p


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_element_literals_round_trip(q):
    spec = field_from_q(q)
    for a in range(q):
        text = spec.element_str(a)
        if spec.k == 1:
            assert text == str(a)
        else:
            assert text == f"a{a}"
        assert spec.parse_element(text) == a


def test_prime_field_has_no_modulus():
    spec = field_from_q(7)
    assert spec.k == 1 and spec.modulus is None
    with pytest.raises(DomainError):
        make_field(7, 1, (1, 1))


def test_default_moduli_build():
    for q in DEFAULT_MODULI:
        spec = field_from_q(q)
        assert spec.q == q
        # x is a root of the modulus: plugging in the generator gives 0
        x = spec.p  # index of the basis element x
        acc = 0
        for j, c in enumerate(spec.modulus):
            acc = spec.add(acc, spec.mul(c % spec.p, spec.pow(x, j)))
        assert acc == 0


def test_custom_modulus_f9():
    spec = make_field(3, 2, parse_modulus("x^2+2x+2", 3))
    assert spec.q == 9
    x = 3
    assert spec.add(spec.mul(x, x), spec.add(spec.mul(2, x), 2)) == 0


def test_reducible_modulus_rejected():
    # x^2+2 = (x+1)(x+2) over F_3
    with pytest.raises(DomainError):
        make_field(3, 2, parse_modulus("x^2+2", 3))


def test_non_prime_power_rejected():
    with pytest.raises(DomainError):
        field_from_q(6)
    with pytest.raises(DomainError):
        field_from_q(1)


def test_parse_field_literal():
    spec = parse_field("q=9,modulus=x^2+2x+2")
    assert spec.q == 9 and spec.modulus == (2, 2, 1)
    assert parse_field("q=5").q == 5
    with pytest.raises(ParseError):
        parse_field("q=")


def test_modulus_str_round_trip():
    spec = field_from_q(27)
    text = modulus_str(spec.modulus)
    assert parse_modulus(text, 3) == spec.modulus


def test_field_spec_is_hashable_value_type():
    a = field_from_q(9)
    b = field_from_q(9)
    assert a == b and hash(a) == hash(b)
    assert a != field_from_q(3)
