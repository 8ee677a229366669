import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from origami.field import PRODUCTION, TEST, GroupElement, PrimeField, field_add, field_inv, field_mul, field_neg, get_profile

F = TEST.field
elements = st.integers(min_value=0, max_value=F.modulus - 1).map(F)


@pytest.mark.parametrize("profile", [TEST, PRODUCTION], ids=lambda p: p.name)
def test_profile_moduli_are_prime(profile):
    g = profile.group
    assert sympy.isprime(profile.field.modulus)
    assert sympy.isprime(g.modulus)
    assert g.order == profile.field.modulus
    assert g.cofactor * g.order + 1 == g.modulus


def test_production_scalar_field_is_bn254():
    assert PRODUCTION.field.modulus == 21888242871839275222246405745257275088548364400416034343698204186575808495617
    assert PRODUCTION.group.modulus.bit_length() == 2048


def test_get_profile():
    assert get_profile("test") is TEST
    with pytest.raises(ValueError, match="unknown profile"):
        get_profile("nope")


@settings(max_examples=200)
@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + F.zero() == a and a * F.one() == a
    assert a - a == F.zero()
    assert field_add(a, b) == a + b and field_mul(a, b) == a * b and field_neg(a) == -a


@settings(max_examples=200)
@given(elements.filter(bool))
def test_inverse(a):
    assert a * a.inverse() == F.one()
    assert field_inv(a) == a.inverse()
    assert F.one() / a == a.inverse()


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        F.zero().inverse()


def test_reduction_and_int_mixing():
    assert F(-1) == F(F.modulus - 1)
    assert F(3) + 4 == F(7)
    assert 10 - F(4) == F(6)
    assert F(2) ** 61 == F(1)
    assert int(F(F.modulus + 5)) == 5


def test_mixing_fields_is_an_error():
    G = PrimeField(101)
    with pytest.raises(ValueError):
        F(1) + G(1)


@settings(max_examples=100)
@given(elements)
def test_bytes_roundtrip(a):
    data = a.to_bytes()
    assert len(data) == F.byte_length
    assert F.from_bytes(data) == a


def test_non_canonical_bytes_rejected():
    with pytest.raises(ValueError):
        F.from_bytes(F.modulus.to_bytes(F.byte_length, "little"))
    with pytest.raises(ValueError):
        F.from_bytes(b"\x01")


def test_group_law():
    G = TEST.group
    rng = random.Random(5)
    g = G.hash_to_group(b"g")
    h = G.hash_to_group(b"h")
    a, b = F.random(rng), F.random(rng)
    assert (a + b) * g == a * g + b * g
    assert a * (g + h) == a * g + a * h
    assert F(G.order) * g == G.identity()
    assert (g - g).is_identity()
    assert F.zero() * g == G.identity()


def test_hash_to_group_lands_in_subgroup():
    G = TEST.group
    for i in range(20):
        g = G.hash_to_group(i.to_bytes(2, "little"))
        assert not g.is_identity()
        assert pow(g.value, G.order, G.modulus) == 1


def test_group_decoding_checks_membership():
    G = TEST.group
    g = G.hash_to_group(b"x")
    assert G.from_bytes(g.to_bytes()) == g
    # 2 is a generator candidate outside the order-p subgroup with overwhelming probability
    assert pow(2, G.order, G.modulus) != 1
    with pytest.raises(ValueError):
        G.from_bytes((2).to_bytes(G.byte_length, "little"))
    with pytest.raises(ValueError):
        G.from_bytes((0).to_bytes(G.byte_length, "little"))


def test_group_elements_are_immutable():
    g = TEST.group.identity()
    with pytest.raises(AttributeError):
        g.value = 5
    assert isinstance(g, GroupElement)
