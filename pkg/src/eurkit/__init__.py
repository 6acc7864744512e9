"""Numerics for split-memory entropic uncertainty bounds.

A sequence of projective measurements is performed on one part of a
tripartite state while two memory parties guess the outcomes of their
assigned measurements. The package computes the summed conditional
uncertainty of such scenarios, several lower bounds on it, the
measurement-only complementarity constants those bounds use, closed-form
reference curves for two state families, and a randomized verification
suite, all behind a small CLI.
"""

from .bounds import (
    BoundReport,
    MeasurementScenario,
    bipartite_memory_bound,
    bound_report,
    chain_overlap_constant,
    convert_plain_bound,
    max_overlap_constant,
    mub_qubit_split_bound,
    pair_overlap_bound,
    plain_chain_bound,
    plain_mub_bound,
    plain_weighted_bound,
    scenario_uncertainty,
    split_memory_bound,
    two_measurement_split_bound,
    weighted_chain_constant,
    weighted_chain_values,
    weighted_split_memory_bound,
)
from .entropy import (
    DensityOperator,
    MeasurementOutcomeEnsemble,
    ProjectiveBasis,
    conditional_entropy,
    holevo,
    measure_subsystem,
    measured_conditional_entropy,
    mutual_information,
    outcome_probabilities,
    shannon_entropy,
    von_neumann_entropy,
)
from .errors import (
    ContractError,
    DimensionError,
    DomainError,
    NumericalError,
    PositivityError,
)
from .linalg import Spectrum, hermitian_eig, hermitian_eigenvalues, kron, partial_trace
from .states import (
    StateFamily,
    closed_form_werner,
    closed_form_wstate,
    ghz_state,
    make_generalized_w,
    make_werner,
    pauli_bases,
    random_basis,
    random_basis_triple,
    random_density,
    random_pure,
    w_ket,
    werner_curve,
    wstate_curve,
    wstate_terms,
)
from .stateio import load_bases, load_state, save_bases, save_state
from .verification import VerifyReport, run_verification

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "ContractError",
    "DensityOperator",
    "DimensionError",
    "DomainError",
    "MeasurementOutcomeEnsemble",
    "MeasurementScenario",
    "NumericalError",
    "PositivityError",
    "ProjectiveBasis",
    "Spectrum",
    "StateFamily",
    "VerifyReport",
    "bipartite_memory_bound",
    "bound_report",
    "chain_overlap_constant",
    "closed_form_werner",
    "closed_form_wstate",
    "conditional_entropy",
    "convert_plain_bound",
    "ghz_state",
    "hermitian_eig",
    "hermitian_eigenvalues",
    "holevo",
    "kron",
    "load_bases",
    "load_state",
    "make_generalized_w",
    "make_werner",
    "max_overlap_constant",
    "measure_subsystem",
    "measured_conditional_entropy",
    "mub_qubit_split_bound",
    "mutual_information",
    "outcome_probabilities",
    "pair_overlap_bound",
    "partial_trace",
    "pauli_bases",
    "plain_chain_bound",
    "plain_mub_bound",
    "plain_weighted_bound",
    "random_basis",
    "random_basis_triple",
    "random_density",
    "random_pure",
    "run_verification",
    "save_bases",
    "save_state",
    "scenario_uncertainty",
    "shannon_entropy",
    "split_memory_bound",
    "two_measurement_split_bound",
    "von_neumann_entropy",
    "w_ket",
    "weighted_chain_constant",
    "weighted_chain_values",
    "weighted_split_memory_bound",
    "werner_curve",
    "wstate_curve",
    "wstate_terms",
]
