"""Fiat-Shamir transcript and the JSON-lines session log.

Framing (bit-exact). Every absorbed message is fed to a running SHA-256 as

    u32le(len(tag)) || tag || u64le(len(data)) || data

with ``tag`` the UTF-8 message kind. The transcript starts by absorbing the
frame ``("origami/transcript/v1", label)``.

A challenge with label ``L`` is drawn by

1. absorbing the frame ``("challenge", L)``;
2. taking ``s = SHA-256 state digest`` (the running state is not finalized);
3. computing ``SHA-256(s || 0x00) || SHA-256(s || 0x01)`` (64 bytes), read
   little-endian and reduced modulo p;
4. absorbing the frame ``("challenge-value", encoding of the element)``.

In interactive mode step 2-3 are replaced by a draw from an injected
``random.Random``; everything else, including absorption, is unchanged.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from typing import Iterable

from .field import FieldElement, PrimeField


def frame(tag: str, data: bytes) -> bytes:
    t = tag.encode()
    return len(t).to_bytes(4, "little") + t + len(data).to_bytes(8, "little") + data


class Transcript:
    def __init__(self, field: PrimeField, label: bytes = b"origami", rng: random.Random | None = None):
        self.field = field
        self.rng = rng
        self._state = hashlib.sha256()
        self.absorb("origami/transcript/v1", label)

    @property
    def interactive(self) -> bool:
        return self.rng is not None

    def absorb(self, tag: str, data: bytes) -> None:
        self._state.update(frame(tag, data))

    def absorb_field(self, tag: str, x: FieldElement) -> None:
        self.absorb(tag, x.to_bytes())

    def challenge(self, label: str) -> FieldElement:
        self.absorb("challenge", label.encode())
        if self.rng is not None:
            value = self.field.random(self.rng)
        else:
            seed = self._state.copy().digest()
            wide = hashlib.sha256(seed + b"\x00").digest() + hashlib.sha256(seed + b"\x01").digest()
            value = self.field(int.from_bytes(wide, "little"))
        self.absorb("challenge-value", value.to_bytes())
        return value


@dataclass(frozen=True)
class LogRecord:
    step: int
    role: str
    kind: str
    data: bytes

    def to_json(self) -> str:
        return json.dumps({"step": self.step, "role": self.role, "kind": self.kind, "hex": self.data.hex()})

    @classmethod
    def from_json(cls, line: str) -> "LogRecord":
        obj = json.loads(line)
        return cls(int(obj["step"]), str(obj["role"]), str(obj["kind"]), bytes.fromhex(obj["hex"]))


class SessionLog(list):
    """A list of :class:`LogRecord` with JSON-lines (de)serialization."""

    def add(self, step: int, role: str, kind: str, data: bytes) -> None:
        self.append(LogRecord(step, role, kind, data))

    def dumps(self) -> str:
        return "".join(rec.to_json() + "\n" for rec in self)

    @classmethod
    def loads(cls, text: str) -> "SessionLog":
        return cls(LogRecord.from_json(line) for line in text.splitlines() if line.strip())

    @classmethod
    def from_records(cls, records: Iterable[LogRecord]) -> "SessionLog":
        return cls(records)
