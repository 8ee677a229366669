"""Acceptance criteria 1-9. Each test records one PASS/FAIL line, printed in
the ``acceptance criteria`` section at the end of the pytest run.

Run alone with ``python3 -m pytest tests/test_acceptance.py -q``.
"""

import random
import time
import timeit

from helpers import F, random_homogeneous, random_lookup, random_trace
from origami import polynomial as poly
from origami.air import (
    PairStructure,
    RelaxedInstance,
    Trace,
    arithmetic_pair,
    cross_term_vectors,
    eval_gate_vector,
    is_satisfying,
    promote,
)
from origami.attacks import STRATEGIES, run_attack
from origami.commitment import commit, setup
from origami.field import TEST
from origami.folding import cgvi_fold, final_check, full_fold, single_fold_prover, verify_session
from origami.lookup import (
    LookupInstance,
    LookupWitness,
    complete_lookup_witness,
    lookup_cross_terms,
    lookup_selectors,
    lookup_structure,
    partial_trace,
    rows_for,
)
from origami.polynomial import Column, ConstraintPoly, Fixed

ODD = LookupInstance.of(F, [3, 7, 3, 5], [1, 3, 5, 7])
EVEN = LookupInstance.of(F, [6, 4, 4, 4], [2, 4, 6, 8])


def test_c1_arithmetic_pair_golden(acceptance):
    with acceptance(1, "Add/multiply selector PAIR gate vanishes on rows 0-2, any read cell perturbation breaks it") as rec:
        P, T = arithmetic_pair(F)
        one = F.one()
        assert eval_gate_vector(P, 0, T, one)[:3] == [F.zero()] * 3

        broken = 0
        # witness cells read by rows 0..2: X1 rows 0..3 (row j and j+1), X2 rows 0..2
        cells = [(r, 0) for r in range(4)] + [(r, 1) for r in range(3)]
        for row, col in cells:
            for delta in (1, -1, 12345):
                bad = T.with_cell(row, col, T[row, col] + delta)
                assert any(eval_gate_vector(P, 0, bad, one)[:3]), (row, col, delta)
                broken += 1
        selector = list(P.preprocessed[0])
        for row in range(3):
            for delta in (1, -1, 12345):
                sel = list(selector)
                sel[row] = sel[row] + delta
                Q = PairStructure(F, P.gates, P.n, P.w, preprocessed=(sel,), active_rows=P.active_rows)
                assert any(eval_gate_vector(Q, 0, T, one)[:3]), ("C", row, delta)
                broken += 1

        best = min(timeit.repeat(lambda: eval_gate_vector(P, 0, T, one), number=1, repeat=200))
        rec.detail = f"{broken} perturbations all detected, evaluation {best * 1e3:.3f} ms"
        assert best < 1e-3


def test_c2_fold_identity(acceptance):
    with acceptance(2, "Fold identity p(x+ry) = p(x) + r^d p(y) + sum r^k D^k p over random homogeneous polynomials") as rec:
        rng = random.Random(20231)
        trials = 1000
        failures = 0
        start = time.perf_counter()
        for t in range(trials):
            d = 2 + t % 4
            p = random_homogeneous(rng, d, terms=rng.randint(1, 5))
            x = {v: F.random(rng) for v in p.variables()}
            y = {v: F.random(rng) for v in p.variables()}
            for v in x:
                if isinstance(v, Fixed):
                    y[v] = x[v]
            r = F.random(rng)
            folded = {v: (x[v] if isinstance(v, Fixed) else x[v] + r * y[v]) for v in x}
            both = poly.doubled_assignment(x, y)
            rhs = p.evaluate(x) + r**d * p.evaluate(y)
            for k in range(1, d):
                rhs = rhs + r**k * poly.cross_term_poly(p, k).evaluate(both)
            failures += p.evaluate(folded) != rhs
        elapsed = time.perf_counter() - start
        rec.detail = f"{trials - failures}/{trials} trials, {failures} failures, {elapsed:.2f} s"
        assert failures == 0
        assert elapsed < 5


def test_c3_odd_even_fold_golden(acceptance):
    with acceptance(3, "Odd/even lookups folded at r = 100 reproduce the four folded columns") as rec:
        n = 7
        P = lookup_structure(F, n)
        key = setup(b"odd-even", n * P.w, TEST)
        rng = random.Random(4)
        instances = []
        for inst in (ODD, EVEN):
            R = (F.random(rng), F.random(rng))
            instances.append(promote(P, complete_lookup_witness(partial_trace(inst, n), R), R))
        folded, _ = single_fold_prover(P, key, instances[0], instances[1], 100)
        cols = [[int(v) for v in folded.instance.trace.columns[c][:4]] for c in range(4)]
        expected = [[603, 407, 403, 405], [201, 403, 605, 807], [403, 403, 405, 607], [403, 801, 205, 607]]
        rec.detail = f"A,S,A',S' = {cols}"
        assert cols == expected
        assert all(v == F.zero() for c in range(4) for v in folded.instance.trace.columns[c][4:])
        assert is_satisfying(P, folded.instance)


def random_lookup_point(rng, n):
    return RelaxedInstance(F.random(rng), random_trace(rng, n, 6), (), (F.random(rng), F.random(rng)))


def test_c4_quadratic_gate_algebra(acceptance):
    with acceptance(4, "f_i(X1 + r X2) = f_i(X1) + r^2 f_i(X2) + r B_i(X1, X2) for the five quadratic lookup gates") as rec:
        n = 7
        P = lookup_structure(F, n)
        sel = lookup_selectors(F, n)
        rng = random.Random(43)
        inputs = 500
        failures = 0
        for _ in range(inputs):
            x1, x2 = random_lookup_point(rng, n), random_lookup_point(rng, n)
            r = F.random(rng)
            B = lookup_cross_terms(
                sel,
                LookupWitness.from_trace(x1.trace, x1.verifier_input),
                x1.u,
                LookupWitness.from_trace(x2.trace, x2.verifier_input),
                x2.u,
            )
            folded_T = x1.trace + x2.trace.scale(r)
            folded_u = x1.u + r * x2.u
            folded_R = tuple(a + r * b for a, b in zip(x1.verifier_input, x2.verifier_input))
            for i in range(5):
                lhs = eval_gate_vector(P, i, folded_T, folded_u, folded_R)
                f1 = eval_gate_vector(P, i, x1.trace, x1.u, x1.verifier_input)
                f2 = eval_gate_vector(P, i, x2.trace, x2.u, x2.verifier_input)
                rhs = [a + r * r * b + r * c for a, b, c in zip(f1, f2, B[i])]
                failures += lhs != rhs
        rec.detail = f"{inputs} inputs x 5 gates, {failures} failures"
        assert failures == 0


def test_c5_closed_form_matches_generic(acceptance):
    with acceptance(5, "Closed-form B1..B5 equal the generic cross-term evaluation") as rec:
        n = 7
        P = lookup_structure(F, n)
        sel = lookup_selectors(F, n)
        rng = random.Random(55)
        pairs = 500
        divergent = 0
        for t in range(pairs):
            if t % 2:
                # honest witnesses with fresh challenges
                pts = []
                for _ in range(2):
                    inst = random_lookup(rng, 4, bound=20)
                    R = (F.random(rng), F.random(rng))
                    pts.append(promote(P, complete_lookup_witness(partial_trace(inst, n), R), R))
                x1, x2 = pts
            else:
                x1, x2 = random_lookup_point(rng, n), random_lookup_point(rng, n)
            closed = lookup_cross_terms(
                sel,
                LookupWitness.from_trace(x1.trace, x1.verifier_input),
                x1.u,
                LookupWitness.from_trace(x2.trace, x2.verifier_input),
                x2.u,
            )
            for i in range(5):
                (generic,) = cross_term_vectors(P, i, x1, x2)
                divergent += list(closed[i]) != generic
        rec.detail = f"{pairs} witness pairs, {divergent} divergent gate vectors"
        assert divergent == 0


def test_c6_end_to_end(acceptance):
    with acceptance(6, "N = 8 lookups, n = 16, Fiat-Shamir: final check accepts, views agree every step") as rec:
        n, N = 16, 8
        assert rows_for(n - 3) == n
        rng = random.Random(66)
        P = lookup_structure(F, n)
        start = time.perf_counter()
        key = setup(b"end-to-end", n * P.w, TEST)
        instances = [random_lookup(rng, n - 3, table_size=rng.randint(1, n - 3)) for _ in range(N)]
        agree = []

        def check(step, acc, committed):
            agree.append(acc.committed(P, key) == committed)

        acc, committed, log = cgvi_fold(
            P, key, [partial_trace(i, n) for i in instances], complete_lookup_witness, seed=b"e2e", on_step=check
        )
        accepted = final_check(P, key, committed, acc)
        replayed = verify_session(P, key, log, acc)
        elapsed = time.perf_counter() - start
        rec.detail = f"final_check={accepted}, replay={replayed}, views agree at {sum(agree)}/{N} steps, {elapsed:.2f} s"
        assert agree == [True] * N
        assert accepted and replayed
        assert elapsed < 30


def test_c7_soundness(acceptance):
    with acceptance(7, "Cheating provers are rejected (non-member among N = 4 in >= 99/100 runs; every strategy)") as rec:
        n, N, runs = 8, 4, 100
        P = lookup_structure(F, n)
        key = setup(b"soundness", n * P.w, TEST)
        rejected = {}
        for strategy in STRATEGIES:
            count = 0
            for seed in range(runs):
                rng = random.Random(seed)
                instances = [random_lookup(rng, n - 3, bound=10**6) for _ in range(N)]
                opening, log = run_attack(strategy, P, key, instances, seed=seed.to_bytes(4, "little"))
                count += not verify_session(P, key, log, opening)
            rejected[strategy] = count
        rec.detail = ", ".join(f"{s} {c}/{runs}" for s, c in rejected.items())
        assert rejected["non-member-lookup"] >= 99
        assert rejected["forged-permutation"] >= 99
        assert rejected["bad-cross-term"] == runs
        assert rejected["stale-challenge"] == runs


def test_c8_commitment_homomorphism(acceptance):
    with acceptance(8, "a Com(x, r1) + b Com(y, r2) = Com(ax + by, a r1 + b r2)") as rec:
        rng = random.Random(88)
        m = 8
        key = setup(b"homomorphism", m, TEST)
        tuples = 1000
        failures = 0
        for _ in range(tuples):
            x = [F.random(rng) for _ in range(m)]
            y = [F.random(rng) for _ in range(m)]
            a, b, r1, r2 = (F.random(rng) for _ in range(4))
            lhs = a * commit(key, x, r1) + b * commit(key, y, r2)
            rhs = commit(key, [a * p + b * q for p, q in zip(x, y)], a * r1 + b * r2)
            failures += lhs != rhs
        rec.detail = f"{tuples} tuples, {failures} failures"
        assert failures == 0


def test_c9_nova_shape(acceptance):
    with acceptance(9, "A single degree-2 gate yields exactly one cross-term commitment per fold") as rec:
        a, b, c = (ConstraintPoly.var(F, Column(i)) for i in range(3))
        P = PairStructure(F, (a * b - c,), 4, 3, name="r1cs-like")
        key = setup(b"nova", 12, TEST)
        rng = random.Random(9)

        def trace():
            xs = [F.random(rng) for _ in range(4)]
            ys = [F.random(rng) for _ in range(4)]
            return Trace(F, [xs, ys, [p * q for p, q in zip(xs, ys)]])

        _, msg = single_fold_prover(P, key, promote(P, trace()), promote(P, trace()), F(7))
        acc, _, log = full_fold(P, key, [trace() for _ in range(5)])
        per_step = [sum(1 for r in log if r.step == s and r.kind == "cross_term_comm") for s in range(1, 6)]
        rec.detail = f"cross terms per fold {per_step}, single fold message {len(msg.cross_term_comms)}"
        assert P.cross_term_index == ((0, 1),)
        assert len(msg.cross_term_comms) == 1
        assert per_step == [1] * 5
        assert verify_session(P, key, log, acc)
