"""Cheating provers. Each strategy produces session artifacts that an honest
verifier must reject.

* ``bad-cross-term``: one cross-term vector is perturbed before it is
  committed, and the prover folds its slack with the perturbed value.
* ``stale-challenge``: from step 2 on, the prover reuses the first folding
  challenge instead of the transcript's fresh one.
* ``forged-permutation``: one lookup's ``A'`` is edited so the adjacency gates
  hold but ``A'`` is no longer a permutation of ``A``.
* ``non-member-lookup``: one lookup contains a value absent from its table;
  the prover pretends it was a table value when building ``A'``.
"""

from __future__ import annotations

import hashlib
import random
from typing import Sequence

from .air import PairStructure, Trace
from .commitment import CommitmentKey
from .folding import FoldingProver, ProverInstance
from .lookup import (
    LookupInstance,
    complete_lookup_witness,
    data_rows,
    partial_trace,
    partial_trace_from_columns,
)
from .transcript import SessionLog

STRATEGIES = ("bad-cross-term", "forged-permutation", "stale-challenge", "non-member-lookup")


class BadCrossTermProver(FoldingProver):
    def __init__(self, *args, target_step: int = 1, **kwargs):
        super().__init__(*args, **kwargs)
        self.target_step = target_step

    def cross_terms(self, step, acc, fresh):
        cross = super().cross_terms(step, acc, fresh)
        if step == self.target_step:
            gate_k = self.P.cross_term_index[0]
            vec = list(cross[gate_k])
            vec[0] = vec[0] + 1
            cross[gate_k] = vec
        return cross


class StaleChallengeProver(FoldingProver):
    def fold_challenge(self, step):
        if step == 1:
            return super().fold_challenge(step)
        r = self.challenges[0]
        self.transcript.challenge("fold")
        self.log.add(step, "verifier", "fold_challenge", r.to_bytes())
        return r


def _pick(seed: bytes, count: int) -> int:
    return random.Random(hashlib.sha256(b"origami/attack-target" + seed).digest()).randrange(count)


def forged_permutation_trace(instance: LookupInstance, n: int) -> Trace:
    """Partial trace whose ``A'`` passes the adjacency gates but is not a permutation of ``A``.

    One entry of ``A'`` is overwritten with its predecessor, or with the
    ``S'`` entry beside it when ``A'`` is constant.
    """
    honest = partial_trace(instance, n)
    a, s, a_perm, s_perm = (list(c[: data_rows(n)]) for c in honest.columns)
    for j in range(1, len(a_perm)):
        if a_perm[j] != a_perm[j - 1]:
            a_perm[j] = a_perm[j - 1]
            break
        if a_perm[j] != s_perm[j]:
            a_perm[j] = s_perm[j]
            break
    else:
        raise ValueError("A and S are constant; nothing to forge")
    return partial_trace_from_columns(instance.A[0].field, a, s, a_perm, s_perm, n)


def non_member_trace(instance: LookupInstance, n: int, position: int = 0) -> Trace:
    """Partial trace for ``instance`` with entry ``position`` of ``A`` replaced by a non-member."""
    field = instance.S[0].field
    outsider = field(max(int(x) for x in instance.S) + 1)
    a = list(instance.A)
    a[position % len(a)] = outsider
    return partial_trace(LookupInstance(tuple(a), instance.S), n, strict=False)


def run_attack(
    strategy: str,
    P: PairStructure,
    key: CommitmentKey,
    instances: Sequence[LookupInstance],
    *,
    seed: bytes = b"",
) -> tuple[ProverInstance, SessionLog]:
    """Run a cheating lookup session; returns the final opening and the log."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
    if not instances:
        raise ValueError("no instances")
    n = P.n
    target = _pick(seed, len(instances))
    traces = [partial_trace(inst, n) for inst in instances]
    prover_cls = FoldingProver
    kwargs = {}
    if strategy == "bad-cross-term":
        prover_cls = BadCrossTermProver
        kwargs["target_step"] = target + 1
    elif strategy == "stale-challenge":
        if len(instances) < 2:
            raise ValueError("stale-challenge needs at least two instances")
        prover_cls = StaleChallengeProver
    elif strategy == "forged-permutation":
        traces[target] = forged_permutation_trace(instances[target], n)
    elif strategy == "non-member-lookup":
        traces[target] = non_member_trace(instances[target], n, position=_pick(seed + b"/pos", len(instances[target].A)))
    prover = prover_cls(P, key, complete=complete_lookup_witness, seed=seed, **kwargs)
    opening, _, log = prover.run(traces)
    return opening, log
