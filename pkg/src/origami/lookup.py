"""Folding Halo2-style lookups (the Origami gadget).

Trace layout, ``n`` rows and ``t = 2`` blinding rows:

* witness columns ``A, S, A', S', Z, W`` (0..5); the partial trace is the
  first four, ``Z`` and ``W`` are grand products computed after the verifier
  sends ``beta, gamma``;
* preprocessed selectors ``Q0`` (row 0), ``Qlast`` (row n-t-1) and
  ``Qblind`` (rows n-t..n-1);
* lookup data sits in rows ``0 .. n-t-2``; the ``Qlast`` row holds the final
  grand-product value and zeros elsewhere; blinding rows are zero.

Gates, with ``active = 1 - Qblind - Qlast``:

1. ``active * (Z[+1] (A' + beta) - Z (A + beta))``
2. ``active * (W[+1] (S' + gamma) - W (S + gamma))``
3. ``Qlast * (Z^2 - Z)``
4. ``Qlast * (W^2 - W)``
5. ``active * (A' - S') (A' - A'[-1])``
6. ``Q0 * (A' - S')``
7. ``Q0 * (Z - 1)``
8. ``Q0 * (W - 1)``

Gates 1-5 are quadratic and carry slack; 6-8 are linear.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .air import ALL_ROWS, PairStructure, Trace
from .field import FieldElement, PrimeField
from .polynomial import Column, ConstraintPoly, Fixed, VerifierInput

BLIND_ROWS = 2

A, S, A_PERM, S_PERM, Z, W = range(6)
Q0, QLAST, QBLIND = range(3)
BETA, GAMMA = range(2)
PARTIAL_WIDTH = 4


class InvalidLookup(ValueError):
    """Some looked-up value does not occur in the table."""


class ChallengeRetry(ValueError):
    """A grand-product denominator vanished; the challenge must be redrawn."""


@dataclass(frozen=True)
class LookupInstance:
    A: tuple[FieldElement, ...]
    S: tuple[FieldElement, ...]

    @classmethod
    def of(cls, field: PrimeField, A: Sequence, S: Sequence) -> "LookupInstance":
        return cls(field.vector(A), field.vector(S))

    def is_valid(self) -> bool:
        return set(self.A) <= set(self.S)

    def to_json(self) -> dict:
        return {"A": [str(a) for a in self.A], "S": [str(s) for s in self.S]}

    @classmethod
    def from_json(cls, field: PrimeField, obj: dict) -> "LookupInstance":
        return cls.of(field, [int(a) for a in obj["A"]], [int(s) for s in obj["S"]])


@dataclass(frozen=True)
class LookupSelectors:
    q0: tuple[FieldElement, ...]
    q_last: tuple[FieldElement, ...]
    q_blind: tuple[FieldElement, ...]
    t: int = BLIND_ROWS

    @property
    def n(self) -> int:
        return len(self.q0)

    @property
    def last_row(self) -> int:
        return self.n - self.t - 1

    def active(self, j: int) -> bool:
        """Rows where the grand-product and adjacency gates apply."""
        return j < self.last_row


def lookup_selectors(field: PrimeField, n: int, t: int = BLIND_ROWS) -> LookupSelectors:
    if n <= t + 1:
        raise ValueError(f"need n > t + 1 = {t + 1} rows")
    q0 = [0] * n
    q0[0] = 1
    q_last = [0] * n
    q_last[n - t - 1] = 1
    q_blind = [0] * (n - t) + [1] * t
    return LookupSelectors(field.vector(q0), field.vector(q_last), field.vector(q_blind), t)


def data_rows(n: int, t: int = BLIND_ROWS) -> int:
    """How many lookup entries fit in a trace of ``n`` rows."""
    return n - t - 1


def rows_for(entries: int, t: int = BLIND_ROWS) -> int:
    return entries + t + 1


def build_permutations(A: Sequence, S: Sequence) -> tuple[tuple, tuple]:
    """Arrange ``A'`` and ``S'`` so that every ``a'_j`` equals ``a'_{j-1}`` or ``s'_j``.

    Equal values of ``A`` are grouped, groups ordered by first occurrence in
    ``S``. The start of each group is matched with the same value in ``S'``;
    unused table values fill the remaining slots, taken from the end of ``S``.
    """
    if len(A) != len(S):
        raise ValueError("pad A and S to the same length first")
    counts = Counter(A)
    missing = [a for a in counts if a not in set(S)]
    if missing:
        raise InvalidLookup(f"values not in the table: {missing}")
    order = []
    for s in S:
        if s in counts and s not in order:
            order.append(s)
    a_perm = [a for a in order for _ in range(counts[a])]

    leftover = list(S)
    s_perm = [None] * len(S)
    for j, a in enumerate(a_perm):
        if j == 0 or a != a_perm[j - 1]:
            s_perm[j] = a
            leftover.remove(a)
    for j in range(len(s_perm)):
        if s_perm[j] is None:
            s_perm[j] = leftover.pop()
    return tuple(a_perm), tuple(s_perm)


def _pad(values: Sequence, length: int) -> list:
    if not values:
        raise ValueError("empty column")
    if len(values) > length:
        raise ValueError(f"{len(values)} entries do not fit in {length} data rows")
    return list(values) + [values[-1]] * (length - len(values))


def _place(field: PrimeField, values: Sequence, n: int) -> tuple:
    return field.vector(list(values) + [0] * (n - len(values)))


def partial_trace(instance: LookupInstance, n: int, *, strict: bool = True) -> Trace:
    """The ``n x 4`` partial trace ``(A, S, A', S')`` for an instance.

    ``A`` and ``S`` are padded to the data rows by repeating their last entry.
    With ``strict=False`` an invalid instance still gets a trace: values missing
    from the table are arranged as if they were the first table entry, so the
    resulting witness fails the grand-product check instead of raising here.
    """
    field = instance.S[0].field
    rows = data_rows(n)
    a = _pad(instance.A, rows)
    s = _pad(instance.S, rows)
    if strict or instance.is_valid():
        a_perm, s_perm = build_permutations(a, s)
    else:
        table = set(s)
        a_perm, s_perm = build_permutations([x if x in table else s[0] for x in a], s)
    return Trace(field, [_place(field, col, n) for col in (a, s, a_perm, s_perm)])


def partial_trace_from_columns(field: PrimeField, A: Sequence, S: Sequence, A_perm: Sequence, S_perm: Sequence, n: int) -> Trace:
    """Lay out explicitly chosen columns; nothing is checked. Used to build cheating witnesses."""
    rows = data_rows(n)
    return Trace(field, [_place(field, _pad(col, rows), n) for col in (A, S, A_perm, S_perm)])


def grand_products(A, A_perm, S, S_perm, beta, gamma, selectors: LookupSelectors) -> tuple[tuple, tuple]:
    """Running products ``Z`` and ``W``.

    ``z_0 = 1`` and ``z_{j+1} = z_j (a_j + beta) / (a'_j + beta)`` over the data
    rows, so the value at ``Qlast`` is 1 exactly when the products telescope.
    Blinding rows are zero.
    """
    field = beta.field
    n = selectors.n
    last = selectors.last_row

    def run(xs, xs_perm, c):
        out = [field.zero()] * n
        out[0] = field.one()
        for j in range(last):
            den = xs_perm[j] + c
            if not den:
                raise ChallengeRetry(f"zero denominator at row {j}")
            out[j + 1] = out[j] * (xs[j] + c) / den
        return tuple(out)

    return run(A, A_perm, beta), run(S, S_perm, gamma)


def lookup_gates(field: PrimeField) -> tuple[ConstraintPoly, ...]:
    def col(c, shift=0):
        return ConstraintPoly.var(field, Column(c, shift))

    def fixed(c):
        return ConstraintPoly.var(field, Fixed(c))

    beta = ConstraintPoly.var(field, VerifierInput(BETA))
    gamma = ConstraintPoly.var(field, VerifierInput(GAMMA))
    q0, q_last, q_blind = fixed(Q0), fixed(QLAST), fixed(QBLIND)
    active = 1 - q_blind - q_last
    a, s, a_perm, s_perm, z, w = (col(c) for c in range(6))
    return (
        active * (col(Z, 1) * (a_perm + beta) - z * (a + beta)),
        active * (col(W, 1) * (s_perm + gamma) - w * (s + gamma)),
        q_last * (z * z - z),
        q_last * (w * w - w),
        active * (a_perm - s_perm) * (a_perm - col(A_PERM, -1)),
        q0 * (a_perm - s_perm),
        q0 * (z - 1),
        q0 * (w - 1),
    )


def lookup_structure(field: PrimeField, n: int) -> PairStructure:
    sel = lookup_selectors(field, n)
    return PairStructure(
        field=field,
        gates=lookup_gates(field),
        n=n,
        w=6,
        v=2,
        preprocessed=(sel.q0, sel.q_last, sel.q_blind),
        active_rows=ALL_ROWS,
        input_labels=("beta", "gamma"),
        name="lookup",
    )


def selectors_of(P: PairStructure) -> LookupSelectors:
    q0, q_last, q_blind = P.preprocessed
    return LookupSelectors(q0, q_last, q_blind)


def complete_lookup_witness(T0: Trace, R: Sequence[FieldElement]) -> Trace:
    """Append the grand products ``Z, W`` to a partial trace ``(A, S, A', S')``."""
    if T0.w != PARTIAL_WIDTH:
        raise ValueError("partial lookup trace must have 4 columns")
    beta, gamma = R
    sel = lookup_selectors(T0.field, T0.n)
    a, s, a_perm, s_perm = T0.columns
    z, w = grand_products(a, a_perm, s, s_perm, beta, gamma, sel)
    return Trace(T0.field, list(T0.columns) + [z, w])


@dataclass(frozen=True)
class LookupWitness:
    A: tuple
    S: tuple
    A_perm: tuple
    S_perm: tuple
    Z: tuple
    W: tuple
    beta: FieldElement
    gamma: FieldElement

    @classmethod
    def from_trace(cls, trace: Trace, R: Sequence[FieldElement]) -> "LookupWitness":
        if trace.w != 6:
            raise ValueError("lookup trace must have 6 columns")
        return cls(*trace.columns, R[BETA], R[GAMMA])


def lookup_cross_terms(sel: LookupSelectors, w1: LookupWitness, u1, w2: LookupWitness, u2) -> tuple[list, ...]:
    """Closed-form cross terms ``B1..B5`` of the five quadratic gates."""
    n = sel.n
    if any(len(col) != n for wit in (w1, w2) for col in (wit.A, wit.S, wit.A_perm, wit.S_perm, wit.Z, wit.W)):
        raise ValueError("witness columns must have n entries")
    b1, b2, b3, b4, b5 = ([] for _ in range(5))
    for j in range(n):
        act = 1 - sel.q_blind[j] - sel.q_last[j]
        ql = sel.q_last[j]
        nxt, prv = (j + 1) % n, (j - 1) % n
        b1.append(act * (w1.Z[nxt] * (w2.A_perm[j] + w2.beta) + w2.Z[nxt] * (w1.A_perm[j] + w1.beta)
                         - w1.Z[j] * (w2.A[j] + w2.beta) - w2.Z[j] * (w1.A[j] + w1.beta)))
        b2.append(act * (w1.W[nxt] * (w2.S_perm[j] + w2.gamma) + w2.W[nxt] * (w1.S_perm[j] + w1.gamma)
                         - w1.W[j] * (w2.S[j] + w2.gamma) - w2.W[j] * (w1.S[j] + w1.gamma)))
        b3.append(ql * (2 * w1.Z[j] * w2.Z[j] - u1 * w2.Z[j] - u2 * w1.Z[j]))
        b4.append(ql * (2 * w1.W[j] * w2.W[j] - u1 * w2.W[j] - u2 * w1.W[j]))
        a1, a2, s1, s2 = w1.A_perm[j], w2.A_perm[j], w1.S_perm[j], w2.S_perm[j]
        p1, p2 = w1.A_perm[prv], w2.A_perm[prv]
        b5.append(act * (2 * a1 * a2 - s1 * a2 - s2 * a1 - a1 * p2 - a2 * p1 + s1 * p2 + s2 * p1))
    return b1, b2, b3, b4, b5
