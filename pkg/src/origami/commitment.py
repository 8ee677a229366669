"""Pedersen vector commitments: ``Com(V, rho) = sum_i v_i * G_i + rho * H``.

The commitment is additively homomorphic in both the vector and the
randomness, which is all folding needs:

    a * Com(x, r1) + b * Com(y, r2) == Com(a*x + b*y, a*r1 + b*r2)

Generators are derived from a public seed by hashing into the group, so
nobody knows discrete-log relations between them.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Sequence

from .field import PRODUCTION, FieldElement, GroupElement, Profile, SchnorrGroup


@dataclass(frozen=True)
class CommitmentKey:
    group: SchnorrGroup
    generators: tuple[GroupElement, ...]
    blinding: GroupElement
    seed: bytes = b""

    @property
    def m(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class Commitment:
    point: GroupElement

    @classmethod
    def identity(cls, group: SchnorrGroup) -> "Commitment":
        return cls(group.identity())

    @classmethod
    def from_bytes(cls, group: SchnorrGroup, data: bytes) -> "Commitment":
        return cls(group.from_bytes(data))

    def __add__(self, other: "Commitment") -> "Commitment":
        return Commitment(self.point + other.point)

    def __sub__(self, other: "Commitment") -> "Commitment":
        return Commitment(self.point - other.point)

    def __rmul__(self, scalar) -> "Commitment":
        return Commitment(scalar * self.point)

    __mul__ = __rmul__

    def is_identity(self) -> bool:
        return self.point.is_identity()

    def to_bytes(self) -> bytes:
        return self.point.to_bytes()

    def hex(self) -> str:
        return self.to_bytes().hex()


def setup(seed: bytes, m: int, profile: Profile = PRODUCTION) -> CommitmentKey:
    if m < 1:
        raise ValueError("m must be at least 1")
    group = profile.group
    tag = b"origami/pedersen/v1" + hashlib.sha256(seed).digest()
    generators = tuple(group.hash_to_group(tag + b"/G/" + i.to_bytes(8, "little")) for i in range(m))
    blinding = group.hash_to_group(tag + b"/H")
    if len(set(generators + (blinding,))) != m + 1:
        raise ValueError("generator collision; choose another seed")
    return CommitmentKey(group, generators, blinding, bytes(seed))


def commit(key: CommitmentKey, V: Sequence[FieldElement], rho: FieldElement, offset: int = 0) -> Commitment:
    """Commit to ``V`` placed at generator positions ``offset .. offset+len(V)-1``.

    Committing a long vector in pieces at consecutive offsets and adding the
    results gives the commitment to the whole vector.
    """
    if offset < 0 or offset + len(V) > key.m:
        raise ValueError(f"vector of length {len(V)} at offset {offset} exceeds key size {key.m}")
    q = key.group.modulus
    acc = pow(key.blinding.value, int(rho), q)
    for g, v in zip(key.generators[offset:], V):
        e = int(v)
        if e:
            acc = acc * pow(g.value, e, q) % q
    return Commitment(GroupElement(acc, key.group))


def verify_opening(key: CommitmentKey, c: Commitment, V: Sequence[FieldElement], rho: FieldElement, offset: int = 0) -> bool:
    try:
        return commit(key, V, rho, offset) == c
    except ValueError:
        return False
