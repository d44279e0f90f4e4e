"""spinel: exact, ground-state-preserving spin elimination for Ising
Hamiltonians, 2-local or k-local, with problem builders and verification
oracles for Max-Cut, the J-Moebius ladder, Hopfield memories and
integer-factorization instances."""

from .eliminate import (
    BranchLimitExceeded,
    EliminationRecord,
    EliminationRefused,
    ReductionLimits,
    Trace,
    back_substitute,
    eliminate_spin,
    extract_local_block,
    full_solve,
    reduce_hamiltonian,
    spectrum,
)
from .expand import (
    CapExceeded,
    SymmetricCoeffs,
    ValueTable,
    direct_expand,
    expand_neg_abs,
    fwht,
    signed_symmetric_expand,
    symmetric_coeffs,
    symmetric_expand,
)
from .gadgets import GadgetKind, apply_gadget, gadget_block, match_gadget
from .poly import (
    ParseError,
    Polynomial,
    UnassignedVariableError,
    canonicalize_monomial,
    format_polynomial,
    load_polynomial,
    parse_polynomial,
    save_polynomial,
)
from .solve import (
    DescentParams,
    DescentResult,
    GradientModel,
    TrialHistogram,
    brute_force,
    hopfield_descent,
    lyapunov_value,
    run_trials,
    state_key,
)

__version__ = "0.1.0"

__all__ = [
    "BranchLimitExceeded",
    "CapExceeded",
    "DescentParams",
    "DescentResult",
    "EliminationRecord",
    "EliminationRefused",
    "GadgetKind",
    "GradientModel",
    "ParseError",
    "Polynomial",
    "ReductionLimits",
    "SymmetricCoeffs",
    "Trace",
    "TrialHistogram",
    "UnassignedVariableError",
    "ValueTable",
    "apply_gadget",
    "back_substitute",
    "brute_force",
    "canonicalize_monomial",
    "direct_expand",
    "eliminate_spin",
    "expand_neg_abs",
    "extract_local_block",
    "format_polynomial",
    "full_solve",
    "fwht",
    "gadget_block",
    "hopfield_descent",
    "load_polynomial",
    "lyapunov_value",
    "match_gadget",
    "parse_polynomial",
    "reduce_hamiltonian",
    "run_trials",
    "save_polynomial",
    "signed_symmetric_expand",
    "spectrum",
    "state_key",
    "symmetric_coeffs",
    "symmetric_expand",
]
