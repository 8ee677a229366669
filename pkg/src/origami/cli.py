"""Command-line front end.

    origami fold INSTANCES [--gates GATES] --out DIR
    origami verify SESSION OPENING [--gates GATES]
    origami attack STRATEGY INSTANCES --out DIR

Without ``--gates`` the instance file holds lookups, either a list of
``{"A": [...], "S": [...]}`` objects or ``{"rows": n, "instances": [...]}``.
With ``--gates STRUCTURE.json`` it holds complete traces (a list of
``{"columns": [...]}`` objects, or ``{"traces": [...]}``) for that structure,
which must not take verifier input.

``fold`` and ``attack`` write ``session.jsonl`` and ``opening.json`` into the
output directory. Exit codes: 0 success/accept, 1 reject, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .air import PairStructure, Trace
from .attacks import STRATEGIES, run_attack
from .commitment import setup
from .field import PROFILES, get_profile
from .folding import FoldingError, ProverInstance, cgvi_fold, challenge_rng, full_fold, verify_session
from .lookup import LookupInstance, complete_lookup_witness, lookup_structure, partial_trace, rows_for
from .transcript import SessionLog

SESSION_FILE = "session.jsonl"
OPENING_FILE = "opening.json"

EXIT_OK, EXIT_REJECT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _items(obj, key):
    if isinstance(obj, dict):
        obj = obj.get(key, [])
    if not isinstance(obj, list):
        raise UsageError(f"expected a list of {key}")
    return obj


def load_lookups(field, path):
    """Lookup instances and the row count to use for them."""
    obj = _read_json(path)
    try:
        instances = [LookupInstance.from_json(field, x) for x in _items(obj, "instances")]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed lookup instance: {exc}") from exc
    if not instances:
        raise UsageError("no instances")
    for i, inst in enumerate(instances):
        if not inst.A or not inst.S:
            raise UsageError(f"instance {i}: A and S must be non-empty")
    longest = max(max(len(x.A), len(x.S)) for x in instances)
    n = int(obj.get("rows", rows_for(longest))) if isinstance(obj, dict) else rows_for(longest)
    if n < rows_for(longest):
        raise UsageError(f"rows={n} cannot hold {longest} entries; need at least {rows_for(longest)}")
    return instances, n


def load_structure(field, path) -> PairStructure:
    try:
        P = PairStructure.from_json(field, _read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed gate file: {exc}") from exc
    if P.v:
        raise UsageError("custom gates with verifier input need a witness-completion function; not available from the CLI")
    return P


def load_traces(field, path, P: PairStructure) -> list[Trace]:
    try:
        traces = [Trace.from_json(field, x) for x in _items(_read_json(path), "traces")]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed trace: {exc}") from exc
    if not traces:
        raise UsageError("no instances")
    for i, t in enumerate(traces):
        if (t.n, t.w) != (P.n, P.w):
            raise UsageError(f"trace {i} is {t.n}x{t.w}, structure expects {P.n}x{P.w}")
    return traces


def write_artifacts(out: Path, log: SessionLog, opening: ProverInstance) -> None:
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / SESSION_FILE).write_text(log.dumps())
        (out / OPENING_FILE).write_text(json.dumps(opening.to_json(), indent=1) + "\n")
    except OSError as exc:
        raise UsageError(f"cannot write to {out}: {exc.strerror or exc}") from exc


def _key(args, P):
    return setup(args.seed.encode(), P.n * P.w, get_profile(args.profile))


def cmd_fold(args) -> int:
    field = get_profile(args.profile).field
    interactive = args.mode == "interactive"
    start = time.perf_counter()
    if args.gates:
        P = load_structure(field, args.gates)
        traces = load_traces(field, args.instances, P)
        opening, _, log = full_fold(P, _key(args, P), traces, seed=args.seed.encode(), interactive=interactive)
        count = len(traces)
    else:
        instances, n = load_lookups(field, args.instances)
        for i, inst in enumerate(instances, start=1):
            if not inst.is_valid():
                print(f"warning: instance {i} looks up values outside its table; the session will not verify", file=sys.stderr)
        P = lookup_structure(field, n)
        partials = [partial_trace(inst, n, strict=False) for inst in instances]
        opening, _, log = cgvi_fold(
            P, _key(args, P), partials, complete_lookup_witness, seed=args.seed.encode(), interactive=interactive
        )
        count = len(instances)
    elapsed = time.perf_counter() - start
    write_artifacts(Path(args.out), log, opening)
    print(f"folded {count} instance(s) into one ({P.name}, n={P.n}, w={P.w}) in {elapsed:.3f}s")
    print(f"wrote {Path(args.out) / SESSION_FILE} and {Path(args.out) / OPENING_FILE}")
    return EXIT_OK


def _header(log: SessionLog) -> dict:
    if not log or log[0].kind != "session":
        raise ValueError("log does not start with a session header")
    return json.loads(log[0].data)


def cmd_verify(args) -> int:
    profile = get_profile(args.profile)
    try:
        text = Path(args.log).read_text()
        opening_obj = json.loads(Path(args.opening).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read input: {exc.strerror or exc}") from exc
    except json.JSONDecodeError:
        print("reject: opening is not valid JSON")
        return EXIT_REJECT
    try:
        log = SessionLog.loads(text)
        header = _header(log)
        if args.gates:
            P = load_structure(profile.field, args.gates)
        else:
            P = lookup_structure(profile.field, int(header["n"]))
        opening = ProverInstance.from_json(P, opening_obj)
    except UsageError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        print(f"reject: malformed artifacts ({exc})")
        return EXIT_REJECT
    rng = challenge_rng(args.seed.encode()) if header.get("mode") == "interactive" else None
    start = time.perf_counter()
    ok = verify_session(P, _key(args, P), log, opening, rng)
    elapsed = time.perf_counter() - start
    print(f"{'accept' if ok else 'reject'} ({elapsed:.3f}s)")
    return EXIT_OK if ok else EXIT_REJECT


def cmd_attack(args) -> int:
    if args.gates:
        raise UsageError("attacks run on the built-in lookup gates only")
    field = get_profile(args.profile).field
    instances, n = load_lookups(field, args.instances)
    P = lookup_structure(field, n)
    try:
        opening, log = run_attack(args.strategy, P, _key(args, P), instances, seed=args.seed.encode())
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    write_artifacts(Path(args.out), log, opening)
    print(f"{args.strategy}: wrote cheating artifacts to {args.out}; verification should reject them")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--profile", choices=sorted(PROFILES), default="test", help="field/group profile (default: test)")
    common.add_argument("--seed", default="origami", help="public seed for the commitment key and session randomness")
    common.add_argument("--gates", metavar="FILE", help="custom gate structure JSON instead of the built-in lookup gates")
    common.add_argument("--mode", choices=("fiat-shamir", "interactive"), default="fiat-shamir")

    parser = argparse.ArgumentParser(prog="origami", description="Fold lookup or custom-gate instances and verify the result.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fold", parents=[common], help="run a fold session")
    p.add_argument("instances")
    p.add_argument("--out", default=".", help="output directory (default: .)")
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("verify", parents=[common], help="replay a session log and check the final opening")
    p.add_argument("log")
    p.add_argument("opening")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("attack", parents=[common], help="produce artifacts from a cheating prover")
    p.add_argument("strategy", choices=STRATEGIES)
    p.add_argument("instances")
    p.add_argument("--out", default=".", help="output directory (default: .)")
    p.set_defaults(func=cmd_attack)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FoldingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
