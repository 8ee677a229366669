"""Sparse multivariate constraint polynomials over a prime field.

Variables are small frozen records:

* ``Column(c, shift)``: witness column ``c`` read ``shift`` rows away (cyclic).
* ``Fixed(c, shift)``: preprocessed column ``c``. These are public constants,
  so they never count toward the degree and are never split when folding.
* ``U``: the homogenizing scalar ``u``.
* ``VerifierInput(slot)``: a verifier challenge such as beta or gamma.
* ``Copy(var, side)``: ``var`` taken from the first (side 0) or second
  (side 1) folded instance; produced by :func:`cross_term_poly`.

A polynomial is stored as a dict from sorted variable tuples to nonzero
integer coefficients, so equal polynomials compare equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .field import FieldElement, PrimeField


@dataclass(frozen=True)
class Column:
    index: int
    shift: int = 0

    def __repr__(self) -> str:
        return f"col{self.index}" + (f"[{self.shift:+d}]" if self.shift else "")


@dataclass(frozen=True)
class Fixed:
    index: int
    shift: int = 0

    def __repr__(self) -> str:
        return f"fixed{self.index}" + (f"[{self.shift:+d}]" if self.shift else "")


@dataclass(frozen=True)
class _U:
    def __repr__(self) -> str:
        return "u"


U = _U()


@dataclass(frozen=True)
class VerifierInput:
    slot: int

    def __repr__(self) -> str:
        return f"vin{self.slot}"


@dataclass(frozen=True)
class Copy:
    var: "VarRef"
    side: int

    def __repr__(self) -> str:
        return f"{'xy'[self.side]}.{self.var!r}"


VarRef = Union[Column, Fixed, _U, VerifierInput, Copy]


def _var_key(v) -> tuple:
    if isinstance(v, Column):
        return (0, v.index, v.shift)
    if isinstance(v, Fixed):
        return (1, v.index, v.shift)
    if v is U or isinstance(v, _U):
        return (2,)
    if isinstance(v, VerifierInput):
        return (3, v.slot)
    if isinstance(v, Copy):
        return (4, v.side) + _var_key(v.var)
    raise TypeError(f"not a variable: {v!r}")


def is_foldable(v) -> bool:
    """True for variables that are linearly combined when two instances are folded."""
    return not isinstance(v, Fixed)


@dataclass(frozen=True)
class Monomial:
    coeff: FieldElement
    vars: tuple

    @property
    def degree(self) -> int:
        return sum(1 for v in self.vars if is_foldable(v))


class ConstraintPoly:
    """Immutable sparse polynomial. Supports ``+``, ``-``, ``*`` and ``**`` for building gates."""

    __slots__ = ("field", "terms", "_degree")

    def __init__(self, field: PrimeField, terms: Mapping[tuple, int] | Iterable[Monomial] = ()):
        p = field.modulus
        acc: dict[tuple, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((m.vars, m.coeff) for m in terms)
        for vars_, coeff in items:
            key = tuple(sorted(vars_, key=_var_key))
            acc[key] = (acc.get(key, 0) + int(coeff)) % p
        self.field = field
        self.terms = {k: c for k, c in acc.items() if c}
        self._degree = max((sum(1 for v in k if is_foldable(v)) for k in self.terms), default=0)

    @classmethod
    def var(cls, field: PrimeField, ref) -> "ConstraintPoly":
        _var_key(ref)
        return cls(field, {(ref,): 1})

    @classmethod
    def constant(cls, field: PrimeField, c) -> "ConstraintPoly":
        return cls(field, {(): int(c)})

    def _lift(self, other) -> "ConstraintPoly":
        if isinstance(other, ConstraintPoly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return ConstraintPoly.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        merged = dict(self.terms)
        for k, c in o.terms.items():
            merged[k] = merged.get(k, 0) + c
        return ConstraintPoly(self.field, merged)

    __radd__ = __add__

    def __neg__(self):
        return ConstraintPoly(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: dict[tuple, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k = tuple(sorted(k1 + k2, key=_var_key))
                out[k] = out.get(k, 0) + c1 * c2
        return ConstraintPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = ConstraintPoly.constant(self.field, 1)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConstraintPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        half = self.field.modulus // 2
        for k, c in sorted(self.terms.items(), key=lambda kv: [_var_key(v) for v in kv[0]]):
            sign, mag = ("-", self.field.modulus - c) if c > half else ("+", c)
            factors = ([str(mag)] if mag != 1 or not k else []) + [repr(v) for v in k]
            body = "*".join(factors)
            out += (f" {sign} " + body) if out else ("-" + body if sign == "-" else body)
        return out

    @property
    def monomials(self) -> list[Monomial]:
        return [Monomial(self.field(c), k) for k, c in self.terms.items()]

    def degree(self) -> int:
        return self._degree

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return all(sum(1 for v in k if is_foldable(v)) == self._degree for k in self.terms)

    def variables(self) -> frozenset:
        return frozenset(v for k in self.terms for v in k)

    def mentions_u(self) -> bool:
        return any(v is U or isinstance(v, _U) for v in self.variables())

    def evaluate(self, assignment: Mapping) -> FieldElement:
        p = self.field.modulus
        total = 0
        for k, c in self.terms.items():
            term = c
            for v in k:
                try:
                    term = term * int(assignment[v]) % p
                except KeyError:
                    raise KeyError(f"assignment is missing variable {v!r}") from None
            total += term
        return self.field(total)


def degree(p: ConstraintPoly) -> int:
    return p.degree()


def evaluate(p: ConstraintPoly, assignment: Mapping) -> FieldElement:
    return p.evaluate(assignment)


def homogenize(p: ConstraintPoly) -> ConstraintPoly:
    """Pad each monomial with powers of ``u`` up to the top degree."""
    if p.mentions_u():
        raise ValueError("polynomial already mentions u")
    d = p.degree()
    out = {}
    for k, c in p.terms.items():
        missing = d - sum(1 for v in k if is_foldable(v))
        out[k + (U,) * missing] = c
    return ConstraintPoly(p.field, out)


def cross_term_poly(p: ConstraintPoly, k: int) -> ConstraintPoly:
    """Symbolic cross term: every way of moving ``k`` foldable factors to the second copy.

    Fixed (preprocessed) variables are shared by both instances and are left as is.
    """
    if not p.is_homogeneous():
        raise ValueError("cross terms need a homogeneous polynomial")
    d = p.degree()
    if not 1 <= k <= d - 1:
        raise ValueError(f"k must lie in [1, {d - 1}], got {k}")
    out: dict[tuple, int] = {}
    for vars_, c in p.terms.items():
        fixed = tuple(v for v in vars_ if not is_foldable(v))
        foldable = [v for v in vars_ if is_foldable(v)]
        for chosen in itertools.combinations(range(len(foldable)), k):
            picked = set(chosen)
            key = fixed + tuple(Copy(v, 1 if i in picked else 0) for i, v in enumerate(foldable))
            key = tuple(sorted(key, key=_var_key))
            out[key] = out.get(key, 0) + c
    return ConstraintPoly(p.field, out)


def doubled_assignment(x: Mapping, y: Mapping) -> dict:
    """Assignment for a cross-term polynomial: ``x`` feeds side 0, ``y`` side 1."""
    out = {}
    for v, val in x.items():
        if is_foldable(v):
            out[Copy(v, 0)] = val
        else:
            out[v] = val
    for v, val in y.items():
        if is_foldable(v):
            out[Copy(v, 1)] = val
    return out


def interpolate(field: PrimeField, xs: list, ys: list) -> list[FieldElement]:
    """Coefficients (lowest first) of the unique polynomial of degree < len(xs) through the points."""
    if len(set(int(x) for x in xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    p = field.modulus
    xs = [int(x) % p for x in xs]
    ys = [int(y) % p for y in ys]
    n = len(xs)
    coeffs = [0] * n
    for i in range(n):
        # basis numerator prod_{j != i} (X - x_j), built up coefficient-wise
        basis = [1]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            basis = [0] + basis
            for t in range(len(basis) - 1):
                basis[t] = (basis[t] - xs[j] * basis[t + 1]) % p
            denom = denom * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(denom, -1, p) % p
        for t in range(n):
            coeffs[t] = (coeffs[t] + scale * basis[t]) % p
    return [field(c) for c in coeffs]


def fold_eval_coefficients(p: ConstraintPoly, x: Mapping, y: Mapping) -> list[FieldElement]:
    """All coefficients of ``r -> p(x + r*y)``, lowest power first (length ``d + 1``)."""
    field = p.field
    d = p.degree()
    if field.modulus <= d:
        raise ValueError("field too small for interpolation nodes")
    vars_ = p.variables()
    nodes = list(range(d + 1))
    values = []
    for r in nodes:
        point = {}
        for v in vars_:
            if is_foldable(v):
                point[v] = int(x[v]) + r * int(y[v])
            else:
                point[v] = x[v]
        values.append(p.evaluate(point))
    return interpolate(field, nodes, values)


def cross_terms_by_interpolation(p: ConstraintPoly, x: Mapping, y: Mapping) -> list[FieldElement]:
    """Values of the cross terms for k = 1..d-1 without symbolic expansion.

    Fixed variables are read from ``x``.
    """
    if not p.is_homogeneous():
        raise ValueError("cross terms need a homogeneous polynomial")
    if p.degree() < 2:
        raise ValueError("cross terms need degree >= 2")
    return fold_eval_coefficients(p, x, y)[1:-1]


# JSON gate descriptions: a polynomial is a list of {"coeff": "<decimal>", "vars": [...]}
# where each var is {"col": c, "shift": s}, {"fixed": c, "shift": s}, "u" or {"vin": slot}.


def var_to_json(v):
    if isinstance(v, Column):
        return {"col": v.index, "shift": v.shift}
    if isinstance(v, Fixed):
        return {"fixed": v.index, "shift": v.shift}
    if v is U or isinstance(v, _U):
        return "u"
    if isinstance(v, VerifierInput):
        return {"vin": v.slot}
    raise TypeError(f"cannot serialize {v!r}")


def var_from_json(obj):
    if obj == "u":
        return U
    if isinstance(obj, dict):
        if "col" in obj:
            return Column(int(obj["col"]), int(obj.get("shift", 0)))
        if "fixed" in obj:
            return Fixed(int(obj["fixed"]), int(obj.get("shift", 0)))
        if "vin" in obj:
            return VerifierInput(int(obj["vin"]))
    raise ValueError(f"bad variable description: {obj!r}")


def poly_to_json(p: ConstraintPoly) -> list:
    out = []
    for k, c in sorted(p.terms.items(), key=lambda kv: [_var_key(v) for v in kv[0]]):
        out.append({"coeff": str(c), "vars": [var_to_json(v) for v in k]})
    return out


def poly_from_json(field: PrimeField, obj: list) -> ConstraintPoly:
    terms: dict[tuple, int] = {}
    for mono in obj:
        key = tuple(sorted((var_from_json(v) for v in mono["vars"]), key=_var_key))
        terms[key] = terms.get(key, 0) + int(mono["coeff"])
    return ConstraintPoly(field, terms)
