"""
Homogenization and cross terms
==============================

Folding replaces two witnesses x, y with x + r*y. For a homogeneous
polynomial p of degree d,

    p(x + r y) = p(x) + r^d p(y) + sum_k r^k B_k(x, y)

and the prover has to commit to the cross terms B_k.
"""

import random

from origami import TEST, Column, ConstraintPoly, U, cross_term_poly, homogenize
from origami import polynomial as poly

F = TEST.field
a, b, c = (ConstraintPoly.var(F, Column(i)) for i in range(3))

# a multiplication gate is not homogeneous; u pads the linear term
gate = a * b - c
relaxed = homogenize(gate)
print("gate:       ", gate)
print("homogenized:", relaxed)

# the single cross term, expanded symbolically
print("B_1:", cross_term_poly(relaxed, 1))

# a cubic gate has two cross terms
cubic = homogenize(a * a * b - 7)
for k in (1, 2):
    print(f"cubic B_{k} has {len(cross_term_poly(cubic, k).terms)} monomials")

# check the identity numerically; the runtime path interpolates r -> p(x + r y)
rng = random.Random(1)
x = {v: F.random(rng) for v in cubic.variables()}
y = {v: F.random(rng) for v in cubic.variables()}
r = F.random(rng)
b1, b2 = poly.cross_terms_by_interpolation(cubic, x, y)
folded = {v: x[v] + r * y[v] for v in x}
print("identity holds:", cubic.evaluate(folded) == cubic.evaluate(x) + r**3 * cubic.evaluate(y) + r * b1 + r * r * b2)
