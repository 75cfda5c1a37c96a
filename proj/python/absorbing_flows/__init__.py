"""State-preserving completely positive semigroups on matrix algebras.

Thin wrapper over the compiled core. Matrices cross the boundary as
complex numpy arrays.
"""

from ._core import (
    CoreError,
    SchemaViolation,
    FaithfulState,
    LindbladGenerator,
    PurityCertificate,
    ConvergenceReport,
    PerturbationDemo,
    PureFlowModel,
    make_state,
    state_from_density,
    admissible_basis,
    clock_shift,
    solve_commutator_equation,
    unitality_defect,
    invariance_defect,
    admits_preserving_drift,
    build_preserving,
    purity_verdict,
    spectral_gap,
    trajectory,
    perturbation_demo,
    depolarizing_generator,
    build_pure_model,
    numerical_index,
    model_to_json,
    model_from_json,
)

__all__ = [
    "CoreError",
    "SchemaViolation",
    "FaithfulState",
    "LindbladGenerator",
    "PurityCertificate",
    "ConvergenceReport",
    "PerturbationDemo",
    "PureFlowModel",
    "make_state",
    "state_from_density",
    "admissible_basis",
    "clock_shift",
    "solve_commutator_equation",
    "unitality_defect",
    "invariance_defect",
    "admits_preserving_drift",
    "build_preserving",
    "purity_verdict",
    "spectral_gap",
    "trajectory",
    "perturbation_demo",
    "depolarizing_generator",
    "build_pure_model",
    "numerical_index",
    "model_to_json",
    "model_from_json",
]
