"""Folding of relaxed AIR instances, with and without verifier input.

One fold combines a running instance ``I1`` with a new instance ``I2`` using a
challenge ``r``:

    u = u1 + r*u2,  T = T1 + r*T2,  R = R1 + r*R2
    E_i = E1_i + r^d_i * E2_i + sum_{k=1}^{d_i-1} r^k * B_{i,k}

where ``B_{i,k}`` are the cross terms of gate ``i``. The verifier performs the
same combination on commitments. Sessions fold ``N`` fresh instances into an
all-zero accumulator and emit a replayable :class:`SessionLog`.

Session log layout (one record per line, ``step`` is 1-based, step 0 is the
header)::

    0  prover   session            canonical JSON header
    i  prover   partial_trace_comm (verifier-input sessions only)
    i  verifier <input label>      one per verifier-input slot, e.g. beta, gamma
    i  prover   completion_comm    (verifier-input sessions only)
    i  prover   trace_comm         (plain sessions only)
    i  prover   cross_term_comm    one per (gate, k), in structure order
    i  verifier fold_challenge
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .air import PairStructure, RelaxedInstance, Trace, cross_term_vectors, is_satisfying, promote, zero_instance
from .commitment import Commitment, CommitmentKey, commit, verify_opening
from .field import FieldElement
from .transcript import SessionLog, Transcript


class FoldingError(Exception):
    """A session step failed; ``step`` is the 1-based instance index."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


class VerificationError(Exception):
    pass


@dataclass(frozen=True)
class CommittedInstance:
    u: FieldElement
    trace_comm: Commitment
    slack_comms: tuple[Commitment, ...]
    verifier_input: tuple[FieldElement, ...] = ()

    @classmethod
    def zero(cls, P: PairStructure, key: CommitmentKey) -> "CommittedInstance":
        ident = Commitment.identity(key.group)
        return cls(P.field.zero(), ident, (ident,) * len(P.slack_gates), P.field.zeros(P.v))


@dataclass(frozen=True)
class FoldProverMessage:
    """What the verifier learns about the second instance of a fold.

    ``u`` and ``verifier_input`` are plaintext scalars; the commitments cover
    the second instance's trace and slack vectors, and the cross terms in
    ``P.cross_term_index`` order.
    """

    trace_comm: Commitment
    slack_comms: tuple[Commitment, ...]
    cross_term_comms: tuple[Commitment, ...]
    u: FieldElement
    verifier_input: tuple[FieldElement, ...] = ()


@dataclass(frozen=True)
class Blinds:
    trace: FieldElement
    slack: tuple[FieldElement, ...]


@dataclass(frozen=True)
class ProverInstance:
    """A relaxed instance together with the randomness of its commitments."""

    instance: RelaxedInstance
    blinds: Blinds

    @classmethod
    def unblinded(cls, P: PairStructure, inst: RelaxedInstance) -> "ProverInstance":
        return cls(inst, Blinds(P.field.zero(), P.field.zeros(len(P.slack_gates))))

    def committed(self, P: PairStructure, key: CommitmentKey) -> CommittedInstance:
        inst = self.instance
        return CommittedInstance(
            inst.u,
            commit(key, inst.trace.flatten(), self.blinds.trace),
            tuple(commit(key, inst.slack[i], b) for i, b in zip(P.slack_gates, self.blinds.slack)),
            inst.verifier_input,
        )

    def to_json(self) -> dict:
        inst = self.instance
        return {
            "u": str(inst.u),
            "verifier_input": [str(x) for x in inst.verifier_input],
            "trace": inst.trace.to_json(),
            "slack": [[str(x) for x in e] for e in inst.slack],
            "rho_trace": str(self.blinds.trace),
            "rho_slack": [str(x) for x in self.blinds.slack],
        }

    @classmethod
    def from_json(cls, P: PairStructure, obj: dict) -> "ProverInstance":
        F = P.field
        inst = RelaxedInstance(
            F(int(obj["u"])),
            Trace.from_json(F, obj["trace"]),
            tuple(F.vector(int(x) for x in e) for e in obj["slack"]),
            F.vector(int(x) for x in obj["verifier_input"]),
        )
        return cls(inst, Blinds(F(int(obj["rho_trace"])), F.vector(int(x) for x in obj["rho_slack"])))


def as_prover_instance(P: PairStructure, x) -> ProverInstance:
    return x if isinstance(x, ProverInstance) else ProverInstance.unblinded(P, x)


def compute_cross_terms(P: PairStructure, first: RelaxedInstance, second: RelaxedInstance) -> dict:
    """``{(gate, k): B_{gate,k}}`` for every slack-bearing gate."""
    out = {}
    for i in P.slack_gates:
        for k, vec in enumerate(cross_term_vectors(P, i, first, second), start=1):
            out[(i, k)] = vec
    return out


def fold_instances(P: PairStructure, first: RelaxedInstance, second: RelaxedInstance, cross: dict, r: FieldElement) -> RelaxedInstance:
    if first.trace.w != second.trace.w or first.trace.n != second.trace.n:
        raise ValueError("instances do not share a shape")
    if len(first.verifier_input) != len(second.verifier_input):
        raise ValueError("instances have different verifier-input lengths")
    slack = []
    for i, d in enumerate(P.degrees):
        if d < 2:
            slack.append(P.field.zeros(P.n))
            continue
        rd = r**d
        e = [a + rd * b for a, b in zip(first.slack[i], second.slack[i])]
        rk = P.field.one()
        for k in range(1, d):
            rk = rk * r
            e = [a + rk * b for a, b in zip(e, cross[(i, k)])]
        slack.append(tuple(e))
    return RelaxedInstance(
        first.u + r * second.u,
        first.trace + second.trace.scale(r),
        tuple(slack),
        tuple(a + r * b for a, b in zip(first.verifier_input, second.verifier_input)),
    )


def fold_blinds(P: PairStructure, first: Blinds, second: Blinds, cross_blinds: dict, r: FieldElement) -> Blinds:
    slack = []
    for pos, i in enumerate(P.slack_gates):
        d = P.degrees[i]
        b = first.slack[pos] + r**d * second.slack[pos]
        for k in range(1, d):
            b = b + r**k * cross_blinds[(i, k)]
        slack.append(b)
    return Blinds(first.trace + r * second.trace, tuple(slack))


def commit_cross_terms(P: PairStructure, key: CommitmentKey, cross: dict, rng: random.Random | None) -> tuple[tuple[Commitment, ...], dict]:
    blinds = {ik: (P.field.random(rng) if rng is not None else P.field.zero()) for ik in P.cross_term_index}
    comms = tuple(commit(key, cross[ik], blinds[ik]) for ik in P.cross_term_index)
    return comms, blinds


def single_fold_prover(
    P: PairStructure,
    key: CommitmentKey,
    first,
    second,
    r: FieldElement,
    rng: random.Random | None = None,
) -> tuple[ProverInstance, FoldProverMessage]:
    """Fold ``second`` into ``first`` at a known challenge ``r``.

    ``first``/``second`` may be bare :class:`RelaxedInstance` objects (zero
    commitment randomness) or :class:`ProverInstance` objects. Cross-term
    randomness is drawn from ``rng`` when given, else zero.
    """
    a = as_prover_instance(P, first)
    b = as_prover_instance(P, second)
    r = P.field(r)
    cross = compute_cross_terms(P, a.instance, b.instance)
    cross_comms, cross_blinds = commit_cross_terms(P, key, cross, rng)
    committed = b.committed(P, key)
    msg = FoldProverMessage(committed.trace_comm, committed.slack_comms, cross_comms, b.instance.u, b.instance.verifier_input)
    folded = ProverInstance(
        fold_instances(P, a.instance, b.instance, cross, r),
        fold_blinds(P, a.blinds, b.blinds, cross_blinds, r),
    )
    return folded, msg


def single_fold_verifier(P: PairStructure, first: CommittedInstance, msg: FoldProverMessage, r: FieldElement) -> CommittedInstance:
    if len(msg.cross_term_comms) != len(P.cross_term_index):
        raise ValueError(f"expected {len(P.cross_term_index)} cross-term commitments, got {len(msg.cross_term_comms)}")
    if len(msg.slack_comms) != len(P.slack_gates) or len(first.slack_comms) != len(P.slack_gates):
        raise ValueError("wrong number of slack commitments")
    if len(msg.verifier_input) != P.v or len(first.verifier_input) != P.v:
        raise ValueError("wrong number of verifier inputs")
    r = P.field(r)
    cross = dict(zip(P.cross_term_index, msg.cross_term_comms))
    slack = []
    for pos, i in enumerate(P.slack_gates):
        d = P.degrees[i]
        c = first.slack_comms[pos] + r**d * msg.slack_comms[pos]
        for k in range(1, d):
            c = c + r**k * cross[(i, k)]
        slack.append(c)
    return CommittedInstance(
        first.u + r * msg.u,
        first.trace_comm + r * msg.trace_comm,
        tuple(slack),
        tuple(a + r * b for a, b in zip(first.verifier_input, msg.verifier_input)),
    )


def final_check(P: PairStructure, key: CommitmentKey, committed: CommittedInstance, opening: ProverInstance) -> bool:
    """Accept iff the opening matches every commitment and satisfies the relaxed gates."""
    inst = opening.instance
    if inst.u != committed.u or tuple(inst.verifier_input) != tuple(committed.verifier_input):
        return False
    if len(inst.slack) != len(P.gates) or len(opening.blinds.slack) != len(P.slack_gates):
        return False
    if inst.trace.n != P.n or inst.trace.w != P.w:
        return False
    if not verify_opening(key, committed.trace_comm, inst.trace.flatten(), opening.blinds.trace):
        return False
    for pos, i in enumerate(P.slack_gates):
        if not verify_opening(key, committed.slack_comms[pos], inst.slack[i], opening.blinds.slack[pos]):
            return False
    return is_satisfying(P, inst)


# -- sessions ---------------------------------------------------------------


def blinding_rng(seed: bytes) -> random.Random:
    return random.Random(hashlib.sha256(b"origami/blinds" + seed).digest())


def challenge_rng(seed: bytes) -> random.Random:
    """Challenge source for interactive (non-Fiat-Shamir) sessions."""
    return random.Random(hashlib.sha256(b"origami/challenges" + seed).digest())


def session_header(P: PairStructure, key: CommitmentKey, protocol: str, count: int, partial_width: int, interactive: bool) -> bytes:
    header = {
        "protocol": protocol,
        "mode": "interactive" if interactive else "fiat-shamir",
        "structure": P.digest().hex(),
        "key": hashlib.sha256(key.seed).hexdigest(),
        "key_size": key.m,
        "n": P.n,
        "w": P.w,
        "partial_width": partial_width,
        "instances": count,
    }
    return json.dumps(header, sort_keys=True, separators=(",", ":")).encode()


Completion = Callable[[Trace, Sequence[FieldElement]], Trace]


class FoldingProver:
    """Prover side of a fold session.

    With ``complete=None`` this is the plain full protocol over complete
    traces. Otherwise every input is a partial trace of width
    ``partial_width``: the prover commits to it, draws the verifier inputs,
    completes the witness with ``complete(partial, R)`` and commits to the new
    columns before folding.

    The hook methods (``verifier_inputs``, ``cross_terms``, ``fold_challenge``
    and ``fold``) are the points the attack harness overrides.
    """

    def __init__(
        self,
        P: PairStructure,
        key: CommitmentKey,
        *,
        complete: Completion | None = None,
        seed: bytes = b"",
        interactive: bool = False,
        on_step: Callable | None = None,
    ):
        if key.m < P.n * P.w or key.m < P.n:
            raise ValueError(f"commitment key too small: need {P.n * P.w}, have {key.m}")
        if complete is None and P.v:
            raise ValueError("structure has verifier inputs; pass a completion function")
        self.P = P
        self.key = key
        self.complete = complete
        self.seed = seed
        self.interactive = interactive
        self.on_step = on_step
        self.rng = blinding_rng(seed)
        self.log = SessionLog()
        self.transcript: Transcript | None = None
        self.challenges: list[FieldElement] = []

    @property
    def protocol(self) -> str:
        return "plain" if self.complete is None else "verifier-input"

    def send(self, step: int, kind: str, data: bytes) -> None:
        self.transcript.absorb(kind, data)
        self.log.add(step, "prover", kind, data)

    def verifier_inputs(self, step: int) -> tuple[FieldElement, ...]:
        values = []
        for label in self.P.input_labels:
            x = self.transcript.challenge(label)
            self.log.add(step, "verifier", label, x.to_bytes())
            values.append(x)
        return tuple(values)

    def cross_terms(self, step: int, acc: RelaxedInstance, fresh: RelaxedInstance) -> dict:
        return compute_cross_terms(self.P, acc, fresh)

    def fold_challenge(self, step: int) -> FieldElement:
        r = self.transcript.challenge("fold")
        self.log.add(step, "verifier", "fold_challenge", r.to_bytes())
        return r

    def fold(self, step: int, acc: ProverInstance, fresh: ProverInstance, cross: dict, cross_blinds: dict, r) -> ProverInstance:
        return ProverInstance(
            fold_instances(self.P, acc.instance, fresh.instance, cross, r),
            fold_blinds(self.P, acc.blinds, fresh.blinds, cross_blinds, r),
        )

    def fresh_instance(self, step: int, trace: Trace) -> tuple[ProverInstance, Commitment]:
        P, key, F = self.P, self.key, self.P.field
        zero_slack = F.zeros(len(P.slack_gates))
        if self.complete is None:
            rho = F.random(self.rng)
            c = commit(key, trace.flatten(), rho)
            self.send(step, "trace_comm", c.to_bytes())
            return ProverInstance(promote(P, trace, ()), Blinds(rho, zero_slack)), c
        w0 = trace.w
        rho0 = F.random(self.rng)
        c0 = commit(key, trace.flatten(), rho0)
        self.send(step, "partial_trace_comm", c0.to_bytes())
        R = self.verifier_inputs(step)
        try:
            full = self.complete(trace, R)
        except (ValueError, ZeroDivisionError) as exc:
            raise FoldingError(step, f"witness completion failed: {exc}") from exc
        if full.w != P.w or full.n != P.n or full.columns[:w0] != trace.columns:
            raise FoldingError(step, "completion must extend the partial trace to the full width")
        rho1 = F.random(self.rng)
        c1 = commit(key, full.select(w0, P.w).flatten(), rho1, offset=P.n * w0)
        self.send(step, "completion_comm", c1.to_bytes())
        return ProverInstance(promote(P, full, R), Blinds(rho0 + rho1, zero_slack)), c0 + c1

    def run(self, traces: Sequence[Trace]) -> tuple[ProverInstance, CommittedInstance, SessionLog]:
        P, key = self.P, self.key
        if not traces:
            raise ValueError("no instances")
        widths = {t.w for t in traces}
        if len(widths) != 1 or any(t.n != P.n for t in traces):
            raise ValueError("all traces must share the structure's row count and one width")
        partial_width = traces[0].w
        if self.complete is None and partial_width != P.w:
            raise ValueError(f"traces have width {partial_width}, structure expects {P.w}")
        if self.complete is not None and not 0 < partial_width < P.w:
            raise ValueError("partial traces must be narrower than the structure")

        header = session_header(P, key, self.protocol, len(traces), partial_width, self.interactive)
        self.transcript = Transcript(P.field, header, rng=challenge_rng(self.seed) if self.interactive else None)
        self.log.add(0, "prover", "session", header)

        acc = ProverInstance.unblinded(P, zero_instance(P))
        committed = CommittedInstance.zero(P, key)
        identity = Commitment.identity(key.group)
        for step, trace in enumerate(traces, start=1):
            fresh, trace_comm = self.fresh_instance(step, trace)
            try:
                cross = self.cross_terms(step, acc.instance, fresh.instance)
                cross_comms, cross_blinds = commit_cross_terms(P, key, cross, self.rng)
            except ValueError as exc:
                raise FoldingError(step, str(exc)) from exc
            for c in cross_comms:
                self.send(step, "cross_term_comm", c.to_bytes())
            r = self.fold_challenge(step)
            self.challenges.append(r)
            acc = self.fold(step, acc, fresh, cross, cross_blinds, r)
            msg = FoldProverMessage(
                trace_comm, (identity,) * len(P.slack_gates), cross_comms, P.field.one(), fresh.instance.verifier_input
            )
            committed = single_fold_verifier(P, committed, msg, r)
            if self.on_step is not None:
                self.on_step(step, acc, committed)
        return acc, committed, self.log


def full_fold(P: PairStructure, key: CommitmentKey, traces: Sequence[Trace], *, seed: bytes = b"", interactive: bool = False, on_step=None):
    """Fold complete traces. Returns ``(prover instance, committed instance, log)``."""
    return FoldingProver(P, key, seed=seed, interactive=interactive, on_step=on_step).run(traces)


def cgvi_fold(
    P: PairStructure,
    key: CommitmentKey,
    partial_traces: Sequence[Trace],
    complete: Completion,
    *,
    seed: bytes = b"",
    interactive: bool = False,
    on_step=None,
):
    """Fold partial traces that are completed after drawing verifier input."""
    return FoldingProver(P, key, complete=complete, seed=seed, interactive=interactive, on_step=on_step).run(partial_traces)


class _Reader:
    def __init__(self, log: Sequence):
        self.records = list(log)
        self.pos = 0

    def take(self, step: int, role: str, kind: str) -> bytes:
        if self.pos >= len(self.records):
            raise VerificationError(f"log ends early; expected {kind} at step {step}")
        rec = self.records[self.pos]
        if (rec.step, rec.role, rec.kind) != (step, role, kind):
            raise VerificationError(f"expected {role}/{kind} at step {step}, found {rec.role}/{rec.kind} at step {rec.step}")
        self.pos += 1
        return rec.data


def replay_session(P: PairStructure, key: CommitmentKey, log: Sequence, rng: random.Random | None = None) -> CommittedInstance:
    """Recompute the verifier's folded committed instance from a session log.

    Challenges are re-derived from the verifier's own transcript and must match
    the logged values. Raises :class:`VerificationError` on any mismatch.
    """
    reader = _Reader(log)
    header_bytes = reader.take(0, "prover", "session")
    try:
        header = json.loads(header_bytes)
        protocol = header["protocol"]
        count = int(header["instances"])
        partial_width = int(header["partial_width"])
        interactive = header["mode"] == "interactive"
    except (ValueError, KeyError, TypeError) as exc:
        raise VerificationError(f"bad session header: {exc}") from exc
    if protocol not in ("plain", "verifier-input") or count < 1:
        raise VerificationError("bad session header")
    if protocol == "plain" and P.v:
        raise VerificationError("plain session for a structure with verifier inputs")
    expected = session_header(P, key, protocol, count, partial_width, interactive)
    if header_bytes != expected:
        raise VerificationError("session header does not match this structure and key")
    if interactive and rng is None:
        raise VerificationError("interactive session needs the challenge source")

    F, group = P.field, key.group
    tr = Transcript(F, header_bytes, rng=rng if interactive else None)

    def recv(step: int, kind: str) -> Commitment:
        data = reader.take(step, "prover", kind)
        tr.absorb(kind, data)
        try:
            return Commitment.from_bytes(group, data)
        except ValueError as exc:
            raise VerificationError(f"step {step}: bad {kind}: {exc}") from exc

    def draw(step: int, kind: str, label: str) -> FieldElement:
        x = tr.challenge(label)
        if reader.take(step, "verifier", kind) != x.to_bytes():
            raise VerificationError(f"step {step}: logged {kind} does not match the transcript")
        return x

    committed = CommittedInstance.zero(P, key)
    identity = Commitment.identity(group)
    for step in range(1, count + 1):
        if protocol == "plain":
            trace_comm = recv(step, "trace_comm")
            R: tuple = ()
        else:
            c0 = recv(step, "partial_trace_comm")
            R = tuple(draw(step, label, label) for label in P.input_labels)
            c1 = recv(step, "completion_comm")
            trace_comm = c0 + c1
        cross = tuple(recv(step, "cross_term_comm") for _ in P.cross_term_index)
        r = draw(step, "fold_challenge", "fold")
        msg = FoldProverMessage(trace_comm, (identity,) * len(P.slack_gates), cross, F.one(), R)
        committed = single_fold_verifier(P, committed, msg, r)
    if reader.pos != len(reader.records):
        raise VerificationError("trailing records after the last step")
    return committed


def verify_session(P: PairStructure, key: CommitmentKey, log: Sequence, opening: ProverInstance, rng: random.Random | None = None) -> bool:
    try:
        committed = replay_session(P, key, log, rng)
    except VerificationError:
        return False
    return final_check(P, key, committed, opening)
