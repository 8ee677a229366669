"""PAIR structures, execution traces and relaxed AIR instances.

A gate is evaluated on every row ``j``; a ``Column(c, s)`` variable reads
``T[(j + s) mod n][c]`` and a ``Fixed(c, s)`` variable reads the structure's
preprocessed column the same way.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import polynomial as poly
from .field import FieldElement, PrimeField
from .polynomial import U, Column, ConstraintPoly, Fixed, VerifierInput

ALL_ROWS = "all"
SKIP_LAST_ROW = "skip-last"


class Trace:
    """An ``n x w`` table of field elements, stored column by column."""

    __slots__ = ("field", "columns")

    def __init__(self, field: PrimeField, columns: Sequence[Sequence]):
        cols = tuple(tuple(field(v) for v in col) for col in columns)
        if cols and len({len(c) for c in cols}) != 1:
            raise ValueError("trace columns must all have the same length")
        self.field = field
        self.columns = cols

    @classmethod
    def zeros(cls, field: PrimeField, n: int, w: int) -> "Trace":
        return cls(field, [field.zeros(n)] * w)

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence]) -> "Trace":
        return cls(field, list(zip(*rows)))

    @property
    def n(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    @property
    def w(self) -> int:
        return len(self.columns)

    def __getitem__(self, rc: tuple[int, int]) -> FieldElement:
        row, col = rc
        column = self.columns[col]
        return column[row % len(column)]

    def rows(self) -> list[tuple]:
        return list(zip(*self.columns))

    def __eq__(self, other) -> bool:
        return isinstance(other, Trace) and self.columns == other.columns

    def __hash__(self) -> int:
        return hash(self.columns)

    def __repr__(self) -> str:
        return f"Trace(n={self.n}, w={self.w})"

    def __add__(self, other: "Trace") -> "Trace":
        if (self.n, self.w) != (other.n, other.w):
            raise ValueError("trace dimensions differ")
        return Trace(self.field, [[a + b for a, b in zip(c1, c2)] for c1, c2 in zip(self.columns, other.columns)])

    def scale(self, s) -> "Trace":
        return Trace(self.field, [[s * a for a in col] for col in self.columns])

    def hstack(self, other: "Trace") -> "Trace":
        if self.n != other.n:
            raise ValueError("row counts differ")
        return Trace(self.field, self.columns + other.columns)

    def select(self, start: int, stop: int) -> "Trace":
        return Trace(self.field, self.columns[start:stop])

    def with_cell(self, row: int, col: int, value) -> "Trace":
        cols = [list(c) for c in self.columns]
        cols[col][row] = self.field(value)
        return Trace(self.field, cols)

    def flatten(self) -> list[FieldElement]:
        """Column-major flattening; the layout used for trace commitments."""
        return [v for col in self.columns for v in col]

    def to_json(self) -> dict:
        return {"n": self.n, "w": self.w, "columns": [[str(v) for v in col] for col in self.columns]}

    @classmethod
    def from_json(cls, field: PrimeField, obj: dict) -> "Trace":
        trace = cls(field, [[int(v) for v in col] for col in obj["columns"]])
        if trace.w != int(obj.get("w", trace.w)) or trace.n != int(obj.get("n", trace.n)):
            raise ValueError("trace dimensions disagree with the declared n and w")
        return trace


@dataclass(frozen=True, eq=False)
class PairStructure:
    """The public part of a PAIR: gates, shape and preprocessed columns.

    ``gates`` are the unrelaxed constraint polynomials; the homogenized forms
    are derived on demand. Gates of degree 1 never carry slack.
    """

    field: PrimeField
    gates: tuple[ConstraintPoly, ...]
    n: int
    w: int
    v: int = 0
    preprocessed: tuple = ()
    active_rows: str = ALL_ROWS
    input_labels: tuple[str, ...] = ()
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "preprocessed", tuple(self.field.vector(c) for c in self.preprocessed))
        if not self.input_labels:
            object.__setattr__(self, "input_labels", tuple(f"vin{i}" for i in range(self.v)))
        if len(self.input_labels) != self.v:
            raise ValueError("need one label per verifier-input slot")
        if self.active_rows not in (ALL_ROWS, SKIP_LAST_ROW):
            raise ValueError(f"unknown active_rows policy {self.active_rows!r}")
        if self.n < 1 or self.w < 0:
            raise ValueError("bad structure dimensions")
        for col in self.preprocessed:
            if len(col) != self.n:
                raise ValueError("preprocessed columns must have n entries")
        for i, g in enumerate(self.gates):
            if g.field != self.field:
                raise ValueError(f"gate {i} is over a different field")
            if g.mentions_u():
                raise ValueError(f"gate {i} already mentions u; pass unrelaxed gates")
            if g.degree() < 1:
                raise ValueError(f"gate {i} has degree 0 and cannot be folded")
            for var in g.variables():
                if isinstance(var, Column) and not 0 <= var.index < self.w:
                    raise ValueError(f"gate {i} references column {var.index} >= w={self.w}")
                if isinstance(var, Fixed) and not 0 <= var.index < self.t_pre:
                    raise ValueError(f"gate {i} references preprocessed column {var.index}")
                if isinstance(var, VerifierInput) and not 0 <= var.slot < self.v:
                    raise ValueError(f"gate {i} references verifier slot {var.slot} >= v={self.v}")

    @property
    def t_pre(self) -> int:
        return len(self.preprocessed)

    @cached_property
    def homogenized(self) -> tuple[ConstraintPoly, ...]:
        return tuple(poly.homogenize(g) for g in self.gates)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree() for g in self.gates)

    @cached_property
    def slack_gates(self) -> tuple[int, ...]:
        """Indices of the gates that carry a slack vector (degree >= 2)."""
        return tuple(i for i, d in enumerate(self.degrees) if d >= 2)

    @cached_property
    def cross_term_index(self) -> tuple[tuple[int, int], ...]:
        """Canonical ``(gate, k)`` order of the cross terms sent in one fold."""
        return tuple((i, k) for i in self.slack_gates for k in range(1, self.degrees[i]))

    def active(self, j: int) -> bool:
        return self.active_rows == ALL_ROWS or j < self.n - 1

    def row_assignment(self, gate: int, j: int, trace: Trace, u, R: Sequence) -> dict:
        out = {}
        for var in self.homogenized[gate].variables():
            if isinstance(var, Column):
                out[var] = trace[(j + var.shift) % self.n, var.index]
            elif isinstance(var, Fixed):
                out[var] = self.preprocessed[var.index][(j + var.shift) % self.n]
            elif isinstance(var, VerifierInput):
                out[var] = R[var.slot]
            else:
                out[var] = u
        return out

    def check_trace(self, trace: Trace, R: Sequence = ()) -> None:
        if trace.n != self.n or trace.w != self.w:
            raise ValueError(f"trace is {trace.n}x{trace.w}, structure expects {self.n}x{self.w}")
        if len(R) != self.v:
            raise ValueError(f"expected {self.v} verifier inputs, got {len(R)}")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "w": self.w,
            "v": self.v,
            "active_rows": self.active_rows,
            "input_labels": list(self.input_labels),
            "preprocessed": [[str(x) for x in col] for col in self.preprocessed],
            "gates": [poly.poly_to_json(g) for g in self.gates],
        }

    @classmethod
    def from_json(cls, field: PrimeField, obj: dict) -> "PairStructure":
        return cls(
            field=field,
            gates=tuple(poly.poly_from_json(field, g) for g in obj["gates"]),
            n=int(obj["n"]),
            w=int(obj["w"]),
            v=int(obj.get("v", 0)),
            preprocessed=tuple(tuple(int(x) for x in col) for col in obj.get("preprocessed", [])),
            active_rows=obj.get("active_rows", ALL_ROWS),
            input_labels=tuple(obj.get("input_labels", ())),
            name=obj.get("name", "custom"),
        )

    def digest(self) -> bytes:
        body = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(body + str(self.field.modulus).encode()).digest()


@dataclass(frozen=True)
class RelaxedInstance:
    """``(u, T, E_1..E_l, R)``. Linear gates carry an all-zero slack vector."""

    u: FieldElement
    trace: Trace
    slack: tuple[tuple[FieldElement, ...], ...]
    verifier_input: tuple[FieldElement, ...] = ()


def eval_gate_vector(P: PairStructure, i: int, T: Trace, u, R: Sequence = ()) -> list[FieldElement]:
    P.check_trace(T, R)
    g = P.homogenized[i]
    zero = P.field.zero()
    return [g.evaluate(P.row_assignment(i, j, T, u, R)) if P.active(j) else zero for j in range(P.n)]


def cross_term_vectors(P: PairStructure, i: int, first: RelaxedInstance, second: RelaxedInstance) -> list[list[FieldElement]]:
    """``[B_{i,1}, ..., B_{i,d-1}]`` for gate ``i``, each a length-``n`` vector."""
    g = P.homogenized[i]
    d = g.degree()
    if d < 2:
        return []
    P.check_trace(first.trace, first.verifier_input)
    P.check_trace(second.trace, second.verifier_input)
    zero = P.field.zero()
    out = [[zero] * P.n for _ in range(d - 1)]
    for j in range(P.n):
        if not P.active(j):
            continue
        x = P.row_assignment(i, j, first.trace, first.u, first.verifier_input)
        y = P.row_assignment(i, j, second.trace, second.u, second.verifier_input)
        for k, value in enumerate(poly.cross_terms_by_interpolation(g, x, y)):
            out[k][j] = value
    return out


def eval_cross_vector(P: PairStructure, i: int, T1: Trace, u1, R1, T2: Trace, u2, R2, k: int) -> list[FieldElement]:
    d = P.degrees[i]
    if not 1 <= k <= d - 1:
        raise ValueError(f"k must lie in [1, {d - 1}] for gate {i}, got {k}")
    first = RelaxedInstance(P.field(u1), T1, (), tuple(R1))
    second = RelaxedInstance(P.field(u2), T2, (), tuple(R2))
    return cross_term_vectors(P, i, first, second)[k - 1]


def promote(P: PairStructure, T: Trace, R: Sequence = ()) -> RelaxedInstance:
    P.check_trace(T, R)
    zeros = P.field.zeros(P.n)
    return RelaxedInstance(P.field.one(), T, tuple(zeros for _ in P.gates), P.field.vector(R))


def zero_instance(P: PairStructure) -> RelaxedInstance:
    """The all-zero relaxed instance that starts a fold session."""
    zeros = P.field.zeros(P.n)
    return RelaxedInstance(P.field.zero(), Trace.zeros(P.field, P.n, P.w), tuple(zeros for _ in P.gates), P.field.zeros(P.v))


def is_satisfying(P: PairStructure, inst: RelaxedInstance) -> bool:
    if inst.trace.n != P.n or inst.trace.w != P.w or len(inst.verifier_input) != P.v:
        return False
    if len(inst.slack) != len(P.gates) or any(len(e) != P.n for e in inst.slack):
        return False
    for i in range(len(P.gates)):
        if P.degrees[i] < 2 and any(inst.slack[i]):
            return False
        if eval_gate_vector(P, i, inst.trace, inst.u, inst.verifier_input) != list(inst.slack[i]):
            return False
    return True


def arithmetic_pair(field: PrimeField, active_rows: str = SKIP_LAST_ROW) -> tuple[PairStructure, Trace]:
    """The add/multiply selector circuit computing (1 + 1 + 5) * 3 = 21.

    The selector column is preprocessed; the witness has columns ``X1, X2``.
    Returns the structure and the honest witness trace.
    """
    c = ConstraintPoly.var(field, Fixed(0))
    x1 = ConstraintPoly.var(field, Column(0))
    x2 = ConstraintPoly.var(field, Column(1))
    x1_next = ConstraintPoly.var(field, Column(0, 1))
    gate = c * (x1_next - (x1 + x2)) + (1 - c) * (x1_next - x1 * x2)
    structure = PairStructure(
        field=field,
        gates=(gate,),
        n=4,
        w=2,
        preprocessed=((1, 1, 0, 0),),
        active_rows=active_rows,
        name="arithmetic",
    )
    trace = Trace(field, [(1, 2, 7, 21), (1, 5, 3, 0)])
    return structure, trace
