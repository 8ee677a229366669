"""Prime-field scalars and the prime-order group used for commitments.

Two profiles are provided:

* ``production``: the BN254 scalar field (254 bits) with a 2048-bit Schnorr
  group whose prime-order subgroup has the same order.
* ``test``: the Mersenne field 2^61 - 1 with a 256-bit Schnorr group. Fast, and
  still large enough that the soundness bounds in the test suite are negligible.

Byte encodings are fixed-width little-endian. A field element occupies
``ceil(bits(p) / 8)`` bytes, a group element ``ceil(bits(q) / 8)`` bytes.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Iterable


class PrimeField:
    """The field of integers modulo a prime ``modulus``."""

    __slots__ = ("modulus", "name", "byte_length")

    def __init__(self, modulus: int, name: str = ""):
        if modulus < 3:
            raise ValueError("modulus must be an odd prime")
        self.modulus = modulus
        self.name = name or f"F_{modulus}"
        self.byte_length = (modulus.bit_length() + 7) // 8

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        return FieldElement(int(value) % self.modulus, self)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("PrimeField", self.modulus))

    def __repr__(self) -> str:
        return f"PrimeField({self.name})"

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def random(self, rng: random.Random | None = None) -> "FieldElement":
        rng = rng or random.SystemRandom()
        return FieldElement(rng.randrange(self.modulus), self)

    def random_nonzero(self, rng: random.Random | None = None) -> "FieldElement":
        rng = rng or random.SystemRandom()
        return FieldElement(rng.randrange(1, self.modulus), self)

    def vector(self, values: Iterable) -> tuple["FieldElement", ...]:
        return tuple(self(v) for v in values)

    def zeros(self, n: int) -> tuple["FieldElement", ...]:
        z = self.zero()
        return (z,) * n

    def from_bytes(self, data: bytes) -> "FieldElement":
        if len(data) != self.byte_length:
            raise ValueError(f"expected {self.byte_length} bytes, got {len(data)}")
        value = int.from_bytes(data, "little")
        if value >= self.modulus:
            raise ValueError("non-canonical field encoding")
        return FieldElement(value, self)


class FieldElement:
    """Immutable residue modulo ``field.modulus``.

    Arithmetic with plain ``int`` operands is allowed; they are reduced into the
    same field. Mixing elements of different fields raises ``ValueError``.
    """

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.modulus != self.field.modulus:
                raise ValueError("cannot mix elements of different fields")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value + o) % self.field.modulus, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value - o) % self.field.modulus, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((o - self.value) % self.field.modulus, self.field)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement((self.value * o) % self.field.modulus, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value % self.field.modulus, self.field)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return FieldElement(pow(self.value, -1, self.field.modulus), self.field)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * self.field(o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.inverse() * o

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** -exponent
        return FieldElement(pow(self.value, exponent, self.field.modulus), self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and self.field.modulus == other.field.modulus
        if isinstance(other, int):
            return self.value == other % self.field.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.modulus))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    __index__ = __int__

    def __repr__(self) -> str:
        return f"Fp({self.value})"

    def __str__(self) -> str:
        return str(self.value)

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(self.field.byte_length, "little")


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_neg(a: FieldElement) -> FieldElement:
    return -a


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


class SchnorrGroup:
    """The order-``order`` subgroup of the multiplicative group mod ``modulus``.

    ``modulus = cofactor * order + 1``. The group law is written additively
    (``g + h`` is multiplication mod ``modulus``) so that commitment code reads
    the same as it would over an elliptic curve.
    """

    __slots__ = ("modulus", "order", "cofactor", "byte_length")

    def __init__(self, modulus: int, order: int, cofactor: int):
        if cofactor * order + 1 != modulus:
            raise ValueError("modulus must equal cofactor * order + 1")
        self.modulus = modulus
        self.order = order
        self.cofactor = cofactor
        self.byte_length = (modulus.bit_length() + 7) // 8

    def __eq__(self, other) -> bool:
        return isinstance(other, SchnorrGroup) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("SchnorrGroup", self.modulus))

    def identity(self) -> "GroupElement":
        return GroupElement(1, self)

    def hash_to_group(self, data: bytes) -> "GroupElement":
        """Map ``data`` to a non-identity subgroup element with unknown discrete log."""
        counter = 0
        while True:
            wide = b""
            block = 0
            while len(wide) < self.byte_length + 16:
                wide += hashlib.sha256(
                    b"origami/h2g" + counter.to_bytes(4, "little") + block.to_bytes(4, "little") + data
                ).digest()
                block += 1
            x = int.from_bytes(wide, "little") % self.modulus
            if x > 1:
                g = pow(x, self.cofactor, self.modulus)
                if g != 1:
                    return GroupElement(g, self)
            counter += 1

    def from_bytes(self, data: bytes) -> "GroupElement":
        if len(data) != self.byte_length:
            raise ValueError(f"expected {self.byte_length} bytes, got {len(data)}")
        value = int.from_bytes(data, "little")
        if not 0 < value < self.modulus or pow(value, self.order, self.modulus) != 1:
            raise ValueError("not an element of the prime-order subgroup")
        return GroupElement(value, self)


class GroupElement:
    __slots__ = ("value", "group")

    def __init__(self, value: int, group: SchnorrGroup):
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "group", group)

    def __setattr__(self, name, value):
        raise AttributeError("GroupElement is immutable")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group != self.group:
            raise ValueError("cannot mix elements of different groups")
        return GroupElement(self.value * other.value % self.group.modulus, self.group)

    def __neg__(self) -> "GroupElement":
        return GroupElement(pow(self.value, -1, self.group.modulus), self.group)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "GroupElement":
        if isinstance(scalar, FieldElement):
            if scalar.field.modulus != self.group.order:
                raise ValueError("scalar field order does not match group order")
            s = scalar.value
        elif isinstance(scalar, int):
            s = scalar % self.group.order
        else:
            return NotImplemented
        return GroupElement(pow(self.value, s, self.group.modulus), self.group)

    __mul__ = __rmul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.value == other.value and self.group == other.group

    def __hash__(self) -> int:
        return hash((self.value, self.group.modulus))

    def is_identity(self) -> bool:
        return self.value == 1

    def __repr__(self) -> str:
        return f"GroupElement(0x{self.value:x})"

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(self.group.byte_length, "little")


def group_scalar_mul(s: FieldElement, g: GroupElement) -> GroupElement:
    return s * g


@dataclass(frozen=True)
class Profile:
    name: str
    field: PrimeField
    group: SchnorrGroup


_TEST_P = 2**61 - 1
_TEST_K = 2**195 + 50
_BN254_R = 21888242871839275222246405745257275088548364400416034343698204186575808495617
_PROD_K = 2**1794 + 1140

TEST = Profile("test", PrimeField(_TEST_P, "mersenne61"), SchnorrGroup(_TEST_K * _TEST_P + 1, _TEST_P, _TEST_K))
PRODUCTION = Profile(
    "production",
    PrimeField(_BN254_R, "bn254-fr"),
    SchnorrGroup(_PROD_K * _BN254_R + 1, _BN254_R, _PROD_K),
)

PROFILES = {p.name: p for p in (TEST, PRODUCTION)}


def get_profile(name: str) -> Profile:
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; choose from {sorted(PROFILES)}") from None
