"""Random generators shared by the tests."""

import random

from origami.air import Trace
from origami.field import TEST
from origami.lookup import LookupInstance
from origami.polynomial import Column, ConstraintPoly, Fixed, U, VerifierInput

F = TEST.field


def random_homogeneous(rng: random.Random, d: int, *, columns=3, fixed=1, vins=1, terms=4) -> ConstraintPoly:
    """A random homogeneous polynomial of degree ``d`` in columns, u, verifier inputs and fixed columns."""
    foldable = [Column(c, s) for c in range(columns) for s in (0, 1)] + [U] + [VerifierInput(i) for i in range(vins)]
    consts = [Fixed(c) for c in range(fixed)]
    out = {}
    for _ in range(terms):
        vars_ = tuple(rng.choice(foldable) for _ in range(d))
        if consts and rng.random() < 0.5:
            vars_ += (rng.choice(consts),)
        out[vars_] = rng.randrange(1, F.modulus)
    return ConstraintPoly(F, out)


def random_assignment(rng: random.Random, p: ConstraintPoly) -> dict:
    return {v: F.random(rng) for v in p.variables()}


def random_trace(rng: random.Random, n: int, w: int) -> Trace:
    return Trace(F, [[F.random(rng) for _ in range(n)] for _ in range(w)])


def random_lookup(rng: random.Random, entries: int, *, table_size=None, bound=1000) -> LookupInstance:
    size = table_size or entries
    S = [rng.randrange(1, bound) for _ in range(size)]
    A = [rng.choice(S) for _ in range(entries)]
    return LookupInstance.of(F, A, S)
