"""
Field elements and Pedersen commitments
=======================================

Scalars live in a prime field; commitments live in a prime-order group of
the same order, so a field element can scale a commitment.
"""

from origami import TEST, commit, setup

F = TEST.field
print("scalar field:", F.name, "p =", F.modulus)

# arithmetic wraps around modulo p
a, b = F(3), F(-1)
print("3 + (-1) =", a + b, "  (-1) =", int(b))
print("1/3 * 3 =", a.inverse() * 3)

# a commitment key is a list of hashed-in generators plus one blinding generator
key = setup(b"demo", 4, TEST)
x = F.vector([1, 2, 3, 4])
y = F.vector([10, 20, 30, 40])
cx = commit(key, x, F(5))
cy = commit(key, y, F(6))

# commitments are additively homomorphic in both the vector and the randomness
r = F(100)
lhs = cx + r * cy
rhs = commit(key, [p + r * q for p, q in zip(x, y)], F(5) + r * F(6))
print("Com(x) + r Com(y) == Com(x + r y):", lhs == rhs)

# a long vector can be committed in pieces at consecutive offsets
left = commit(key, x[:2], F(2))
right = commit(key, x[2:], F(3), offset=2)
print("pieces add up:", left + right == cx)
