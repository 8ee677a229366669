"""
Folding lookups: odd and even numbers
=====================================

Two lookups: (3, 7, 3, 5) is in the odd table (1, 3, 5, 7) and (6, 4, 4, 4)
is in the even table (2, 4, 6, 8). The prover sorts each into A', S',
receives beta and gamma, builds the grand products Z and W, and folds.
"""

from origami import TEST, LookupInstance, build_permutations, lookup_structure, partial_trace, promote, setup
from origami.air import is_satisfying
from origami.folding import cgvi_fold, single_fold_prover, verify_session
from origami.lookup import complete_lookup_witness

F = TEST.field
odd = LookupInstance.of(F, [3, 7, 3, 5], [1, 3, 5, 7])
even = LookupInstance.of(F, [6, 4, 4, 4], [2, 4, 6, 8])

for name, inst in (("odd", odd), ("even", even)):
    a_perm, s_perm = build_permutations(inst.A, inst.S)
    print(f"{name}: A' = {[int(v) for v in a_perm]}  S' = {[int(v) for v in s_perm]}")

# four data rows need seven trace rows: one for the final grand product, two blinding rows
n = 7
P = lookup_structure(F, n)
print("gate degrees:", P.degrees)

# fold by hand with r = 100 to see the linear combination of the columns
R1, R2 = (F(11), F(12)), (F(13), F(14))
first = promote(P, complete_lookup_witness(partial_trace(odd, n), R1), R1)
second = promote(P, complete_lookup_witness(partial_trace(even, n), R2), R2)
key = setup(b"lookup-demo", n * P.w, TEST)
folded, msg = single_fold_prover(P, key, first, second, 100)
for label, col in zip(("A", "S", "A'", "S'"), folded.instance.trace.columns):
    print(f"  {label:2} folded: {[int(v) for v in col[:4]]}")
print("folded columns are no lookup any more, yet the relaxed gates hold:", is_satisfying(P, folded.instance))
print("cross-term commitments sent:", len(msg.cross_term_comms))

# the real session: Fiat-Shamir challenges, commitments, replayable log
acc, committed, log = cgvi_fold(P, key, [partial_trace(i, n) for i in (odd, even)], complete_lookup_witness)
print("session records:", len(log), " verifier accepts:", verify_session(P, key, log, acc))
