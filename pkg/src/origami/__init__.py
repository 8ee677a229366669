"""Nova-style folding for polynomial custom gates with verifier input, and
Origami: folding many Halo2-style lookups into one relaxed instance."""

from .air import ALL_ROWS, SKIP_LAST_ROW, PairStructure, RelaxedInstance, Trace, arithmetic_pair, is_satisfying, promote
from .commitment import Commitment, CommitmentKey, commit, setup, verify_opening
from .field import PRODUCTION, PROFILES, TEST, FieldElement, PrimeField, Profile, SchnorrGroup, get_profile
from .folding import (
    CommittedInstance,
    FoldingError,
    FoldingProver,
    ProverInstance,
    cgvi_fold,
    final_check,
    full_fold,
    replay_session,
    single_fold_prover,
    single_fold_verifier,
    verify_session,
)
from .lookup import (
    LookupInstance,
    build_permutations,
    complete_lookup_witness,
    lookup_structure,
    partial_trace,
    rows_for,
)
from .polynomial import Column, ConstraintPoly, Fixed, U, VerifierInput, cross_term_poly, homogenize
from .transcript import SessionLog, Transcript

__all__ = [
    "ALL_ROWS", "SKIP_LAST_ROW", "PairStructure", "RelaxedInstance", "Trace", "arithmetic_pair",
    "is_satisfying", "promote", "Commitment", "CommitmentKey", "commit", "setup", "verify_opening",
    "PRODUCTION", "PROFILES", "TEST", "FieldElement", "PrimeField", "Profile", "SchnorrGroup",
    "get_profile", "CommittedInstance", "FoldingError", "FoldingProver", "ProverInstance", "cgvi_fold",
    "final_check", "full_fold", "replay_session", "single_fold_prover", "single_fold_verifier",
    "verify_session", "LookupInstance", "build_permutations", "complete_lookup_witness",
    "lookup_structure", "partial_trace", "rows_for", "Column", "ConstraintPoly", "Fixed", "U",
    "VerifierInput", "cross_term_poly", "homogenize", "SessionLog", "Transcript",
]
