"""
Cheating provers
================

Each strategy deviates from the protocol in one place. The verifier replays
the session and checks the final opening; every attempt is rejected.
"""

import random

from origami import TEST, LookupInstance, lookup_structure, rows_for, setup
from origami.attacks import STRATEGIES, run_attack
from origami.folding import verify_session

F = TEST.field
rng = random.Random(7)


def random_lookup(entries):
    table = [rng.randrange(1, 1000) for _ in range(entries)]
    return LookupInstance.of(F, [rng.choice(table) for _ in range(entries)], table)


n = rows_for(6)
P = lookup_structure(F, n)
key = setup(b"attack-demo", n * P.w, TEST)
instances = [random_lookup(6) for _ in range(4)]

for strategy in STRATEGIES:
    rejected = 0
    for seed in range(20):
        opening, log = run_attack(strategy, P, key, instances, seed=bytes([seed]))
        rejected += not verify_session(P, key, log, opening)
    print(f"{strategy:20} rejected {rejected}/20")
