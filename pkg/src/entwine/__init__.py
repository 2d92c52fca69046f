"""Quantum-style inference over entwined questions.

Questions that disturb each other's answers are modeled as generators of
a compact Lie algebra representation; answers are eigenvalues, and
probabilities come out of the squared-projection rule with projective
state update on answering.  The package stacks up from a dense complex
linear-algebra kernel through representation theory (structure
constants, Casimirs, irrep catalogs, tensor-product decomposition) to a
measurement layer, named scenarios with replayable sessions, a CLI, and
an HTTP session service.
"""

__version__ = "0.1.0"

from .algebra import (
    AlgebraInfo,
    GeneratorSet,
    GeneratorSetReport,
    StructureConstants,
    algebra_catalog,
    d_symbols,
    jacobi_residual,
    structure_constants,
    su_fundamental,
    verify_generator_set,
)
from .linalg import (
    EigenSystem,
    commutator,
    hermitian_eigen,
    kron,
    simultaneous_eigenbasis,
    unitary_exp,
)
from .measure import (
    FrequencyTable,
    JointDistribution,
    Observable,
    Outcome,
    OutcomeDistribution,
    ask,
    compose_question,
    evolve,
    expectation,
    joint_peek,
    peek,
    simulate_sequence,
    uniform_state,
    unit_coefficients,
)
from .reps import (
    DecompositionResult,
    IrrepCatalog,
    IrrepLabel,
    adjoint_rep,
    build_irrep_catalog,
    commutant,
    conjugate_rep,
    cubic_casimir,
    decompose,
    decompose_product,
    quadratic_casimir,
    rep_equivalent,
    su2_spin_irrep,
    tensor_rep,
    trivial_rep,
    weights,
)
from .scenario import (
    Scenario,
    Session,
    apply_ask,
    apply_evolve,
    apply_reset,
    builtin_names,
    get_scenario,
    load_scenario,
    new_session,
    replay,
    resolve_question,
    session_from_snapshot,
)

__all__ = [
    "AlgebraInfo",
    "DecompositionResult",
    "EigenSystem",
    "FrequencyTable",
    "GeneratorSet",
    "GeneratorSetReport",
    "IrrepCatalog",
    "IrrepLabel",
    "JointDistribution",
    "Observable",
    "Outcome",
    "OutcomeDistribution",
    "Scenario",
    "Session",
    "StructureConstants",
    "adjoint_rep",
    "algebra_catalog",
    "apply_ask",
    "apply_evolve",
    "apply_reset",
    "ask",
    "build_irrep_catalog",
    "builtin_names",
    "commutant",
    "commutator",
    "compose_question",
    "conjugate_rep",
    "cubic_casimir",
    "d_symbols",
    "decompose",
    "decompose_product",
    "evolve",
    "expectation",
    "get_scenario",
    "hermitian_eigen",
    "jacobi_residual",
    "joint_peek",
    "kron",
    "load_scenario",
    "new_session",
    "peek",
    "quadratic_casimir",
    "rep_equivalent",
    "replay",
    "resolve_question",
    "session_from_snapshot",
    "simulate_sequence",
    "simultaneous_eigenbasis",
    "structure_constants",
    "su2_spin_irrep",
    "su_fundamental",
    "tensor_rep",
    "trivial_rep",
    "uniform_state",
    "unit_coefficients",
    "unitary_exp",
    "verify_generator_set",
    "weights",
]
