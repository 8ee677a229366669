"""
A small PAIR: add and multiply with a selector
==============================================

The circuit computes (1 + 1 + 5) * 3 = 21 over four rows. A preprocessed
selector C picks addition (C = 1) or multiplication (C = 0) per row:

    C * (X1[+1] - (X1 + X2)) + (1 - C) * (X1[+1] - X1 * X2) = 0

The last row has no successor, so it is not constrained.
"""

from origami import TEST, arithmetic_pair, setup
from origami.air import eval_gate_vector
from origami.folding import full_fold, verify_session

F = TEST.field
P, T = arithmetic_pair(F)


def signed(v):
    return int(v) if int(v) <= F.modulus // 2 else int(v) - F.modulus


print("rows (C, X1, X2):")
for j, row in enumerate(T.rows()):
    print("  ", int(P.preprocessed[0][j]), *map(int, row))

print("gate vector:", [signed(v) for v in eval_gate_vector(P, 0, T, F.one())])

# changing one cell breaks the row that reads it
bad = T.with_cell(2, 0, 8)
print("after X1[2] = 8:", [signed(v) for v in eval_gate_vector(P, 0, bad, F.one())])

# the selector is a constant, so the gate folds as a degree-2 polynomial
print("folding degree:", P.degrees[0], " cross terms per fold:", len(P.cross_term_index))

# fold three copies of the computation and check the result
key = setup(b"pair-demo", P.n * P.w, TEST)
acc, committed, log = full_fold(P, key, [T, T, T], seed=b"demo")
print("records in session log:", len(log))
print("verifier accepts:", verify_session(P, key, log, acc))
