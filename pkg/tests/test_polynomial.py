import random

import pytest

from helpers import F, random_assignment, random_homogeneous
from origami import polynomial as poly
from origami.polynomial import Column, ConstraintPoly, Copy, Fixed, U, VerifierInput


def var(ref):
    return ConstraintPoly.var(F, ref)


x, y, z = var(Column(0)), var(Column(1)), var(Column(2))
c = var(Fixed(0))


def test_normalization_and_equality():
    assert x * y == y * x
    assert x + y - x == y
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x - x).terms == {}
    assert 3 * x == x + x + x


def test_degree_ignores_fixed_columns():
    g = c * (x - y * z)
    assert g.degree() == 2
    assert poly.degree(x * x * z) == 3
    assert ConstraintPoly.constant(F, 7).degree() == 0


def test_evaluate():
    g = x * y + 3 * z - 1
    assignment = {Column(0): F(2), Column(1): F(5), Column(2): F(4)}
    assert poly.evaluate(g, assignment) == F(21)
    with pytest.raises(KeyError, match="missing"):
        g.evaluate({Column(0): F(1)})


def test_homogenize_pads_with_u():
    g = x * y - z + 5
    h = poly.homogenize(g)
    u = var(U)
    assert h == x * y - z * u + 5 * u * u
    assert h.is_homogeneous() and h.degree() == 2
    assert not g.is_homogeneous()


def test_homogenize_keeps_fixed_columns_free():
    g = c * (x * y - z)
    assert poly.homogenize(g) == c * (x * y - z * var(U))


def test_homogenize_at_u_one_is_original():
    rng = random.Random(1)
    g = x * x * y - 4 * z + c * y + 9
    for _ in range(20):
        a = {Column(0): F.random(rng), Column(1): F.random(rng), Column(2): F.random(rng), Fixed(0): F.random(rng)}
        assert poly.homogenize(g).evaluate({**a, U: F.one()}) == g.evaluate(a)


def test_homogenize_rejects_u():
    with pytest.raises(ValueError):
        poly.homogenize(x * var(U))


def test_cross_term_of_square():
    # (x1 + r x2)^2 has cross term 2 x1 x2
    b = poly.cross_term_poly(x * x, 1)
    x0, x1 = var(Copy(Column(0), 0)), var(Copy(Column(0), 1))
    assert b == 2 * x0 * x1


def test_cross_term_checks():
    with pytest.raises(ValueError, match="homogeneous"):
        poly.cross_term_poly(x * x + y, 1)
    with pytest.raises(ValueError, match="k must"):
        poly.cross_term_poly(x * x, 2)
    with pytest.raises(ValueError, match="k must"):
        poly.cross_term_poly(x * x, 0)


def test_cross_term_symmetry():
    """Swapping the two instances maps the k-th cross term onto the (d-k)-th."""
    rng = random.Random(3)
    for d in range(2, 6):
        p = random_homogeneous(rng, d)
        a, b = random_assignment(rng, p), random_assignment(rng, p)
        for fv in [v for v in p.variables() if isinstance(v, Fixed)]:
            b[fv] = a[fv]
        for k in range(1, d):
            lhs = poly.cross_term_poly(p, k).evaluate(poly.doubled_assignment(a, b))
            rhs = poly.cross_term_poly(p, d - k).evaluate(poly.doubled_assignment(b, a))
            assert lhs == rhs


def test_interpolation_matches_symbolic_expansion():
    rng = random.Random(11)
    for trial in range(200):
        d = 2 + trial % 4
        p = random_homogeneous(rng, d)
        a, b = random_assignment(rng, p), random_assignment(rng, p)
        fast = poly.cross_terms_by_interpolation(p, a, b)
        slow = [poly.cross_term_poly(p, k).evaluate(poly.doubled_assignment(a, b)) for k in range(1, d)]
        assert fast == slow


def test_fold_identity_small_example():
    p = poly.homogenize(x * y - z)
    a = {Column(0): F(2), Column(1): F(3), Column(2): F(6), U: F(1)}
    b = {Column(0): F(4), Column(1): F(5), Column(2): F(20), U: F(1)}
    r = F(7)
    folded = {v: a[v] + r * b[v] for v in a}
    (b1,) = poly.cross_terms_by_interpolation(p, a, b)
    # B = x1 y2 + x2 y1 - z1 u2 - z2 u1 = 10 + 12 - 6 - 20
    assert b1 == F(-4)
    assert p.evaluate(folded) == p.evaluate(a) + r * r * p.evaluate(b) + r * b1


def test_interpolate_recovers_coefficients():
    rng = random.Random(2)
    coeffs = [F.random(rng) for _ in range(5)]
    xs = list(range(5))
    ys = [sum((c * F(xv) ** i for i, c in enumerate(coeffs)), F.zero()) for xv in xs]
    assert poly.interpolate(F, xs, ys) == coeffs
    with pytest.raises(ValueError):
        poly.interpolate(F, [1, 1], [0, 0])


def test_cross_terms_need_degree_two():
    with pytest.raises(ValueError):
        poly.cross_terms_by_interpolation(x, {Column(0): F(1)}, {Column(0): F(2)})


def test_json_roundtrip():
    g = c * (var(Column(0, 1)) - x * y) + 7 * var(VerifierInput(1)) * z - 3
    data = poly.poly_to_json(g)
    assert poly.poly_from_json(F, data) == g
    assert {"vin": 1} in [v for m in data for v in m["vars"]]
    assert {"coeff": str(F.modulus - 1), "vars": ["u"]} in poly.poly_to_json(poly.homogenize(x - 1))


def test_json_rejects_unknown_variables():
    with pytest.raises(ValueError):
        poly.var_from_json({"bogus": 1})
