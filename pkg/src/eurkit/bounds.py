"""Uncertainty bounds for several measurements with split quantum memories.

The scenario throughout: a sequence of projective bases is measured on
subsystem 0 of a tripartite state, one basis per run. The outcomes of the
first `split` bases are guessed by the holder of subsystem 1 (memory B),
the rest by the holder of subsystem 2 (memory C). The uncertainty being
bounded is the sum of the measured conditional entropies

    U = sum_{m <= split} H(M_m|B) + sum_{m > split} H(M_m|C).

Bounds provided, all in bits:

* split-memory bound: -log2(b) + (N-1) [S(A|B) + S(A|C)] / 2 + max(0, delta),
  where b is the chain overlap constant of the basis sequence and delta
  compares the average state-memory mutual information against the summed
  accessible-information (Holevo) terms of the measurements.
* weighted variant: the same with -log2(b) replaced by a state-weighted
  chain constant maximized over measurement orderings; never weaker.
* MUB conversion (three pairwise unbiased qubit bases only):
  log2(2) + [S(A|B) + S(A|C)] / 2 + max(0, delta').
* pair specializations for two measurements, and plain (memoryless)
  bounds convertible via the Holevo correction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .entropy import (
    DensityOperator,
    ProjectiveBasis,
    _vn,
    holevo,
    measured_conditional_entropy,
    outcome_probabilities,
    shannon_entropy,
    von_neumann_entropy,
)
from .errors import ContractError, DimensionError, DomainError
from .linalg import partial_trace

MAX_ORDERINGS_N = 5
MUB_TOL = 1e-9


@dataclass(frozen=True)
class MeasurementScenario:
    """An ordered basis sequence with its memory split.

    The first `split` bases are guessed with memory B (subsystem 1), the
    remaining ones with memory C (subsystem 2).
    """

    bases: tuple
    split: int

    def __post_init__(self):
        bases = tuple(self.bases)
        if not bases:
            raise ContractError("a scenario needs at least one basis")
        dim = bases[0].dim
        for b in bases:
            if b.dim != dim:
                raise DimensionError("all bases must share one dimension")
        labels = [b.label for b in bases]
        if len(set(labels)) != len(labels):
            raise ContractError(f"duplicate basis labels in {labels}")
        split = int(self.split)
        if not 0 <= split <= len(bases):
            raise ContractError(
                f"split {split} outside 0..{len(bases)} for {len(bases)} bases"
            )
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "split", split)

    @property
    def dim(self) -> int:
        return self.bases[0].dim

    @property
    def labels(self) -> tuple:
        return tuple(b.label for b in self.bases)

    def memory_for(self, index: int) -> int:
        return 1 if index < self.split else 2


def max_overlap_constant(x: ProjectiveBasis, z: ProjectiveBasis) -> tuple[float, float]:
    """Largest squared overlap c between two bases and its -log2."""
    c = float(x.overlaps(z).max())
    return c, -math.log2(c)


def _overlap_chain(bases) -> list:
    return [bases[m].overlaps(bases[m + 1]) for m in range(len(bases) - 1)]


def chain_overlap_constant(bases) -> tuple[float, float]:
    """Chain constant b for an ordered basis sequence.

    For each terminal index the squared overlaps are summed along every
    path of intermediate indices, with the first index maximized out; b is
    the largest such path sum. Enumeration is exhaustive, which is cheap at
    the dimensions this package targets and doubles as a reference
    implementation. For two bases b reduces to the max overlap constant.
    """
    bases = tuple(bases)
    if len(bases) < 2:
        raise ContractError("chain constant needs at least two bases")
    d = bases[0].dim
    for b in bases:
        if b.dim != d:
            raise DimensionError("all bases must share one dimension")
    ov = _overlap_chain(bases)
    n = len(bases)
    first_max = ov[0].max(axis=0)  # max over i_1 of |<u1_i1|u2_i2>|^2
    best = 0.0
    for last in range(d):
        total = 0.0
        for mids in itertools.product(range(d), repeat=n - 2):
            path = mids + (last,)
            term = first_max[path[0]]
            for m in range(1, n - 1):
                term *= ov[m][path[m - 1], path[m]]
            total += term
        best = max(best, total)
    return float(best), -math.log2(best)


def _path_sums(bases) -> np.ndarray:
    d = bases[0].dim
    ov = _overlap_chain(bases)
    n = len(bases)
    first_max = ov[0].max(axis=0)
    sums = np.zeros(d)
    for last in range(d):
        total = 0.0
        for mids in itertools.product(range(d), repeat=n - 2):
            path = mids + (last,)
            term = first_max[path[0]]
            for m in range(1, n - 1):
                term *= ov[m][path[m - 1], path[m]]
            total += term
        sums[last] = total
    return sums


def weighted_chain_values(bases, rho_a: DensityOperator) -> tuple:
    """State-weighted chain term for every ordering of the bases.

    For an ordering ending in basis u^N, the path sums per terminal index
    are averaged as -sum_i p_i log2(path_sum_i) with p_i the Born
    probabilities of u^N on rho_a. Returns (ordering labels, value) pairs.
    """
    bases = tuple(bases)
    if len(bases) < 2:
        raise ContractError("weighted chain term needs at least two bases")
    if len(bases) > MAX_ORDERINGS_N:
        raise ContractError(
            f"ordering search limited to {MAX_ORDERINGS_N} bases, got {len(bases)}"
        )
    d = bases[0].dim
    if rho_a.dim != d:
        raise DimensionError(
            f"rho_a dimension {rho_a.dim} does not match basis dimension {d}"
        )
    out = []
    for perm in itertools.permutations(range(len(bases))):
        ordered = tuple(bases[i] for i in perm)
        sums = _path_sums(ordered)
        probs = outcome_probabilities(rho_a, ordered[-1], 0)
        value = float(-(np.maximum(probs, 0.0) @ np.log2(sums)))
        out.append((tuple(b.label for b in ordered), value))
    return tuple(out)


def weighted_chain_constant(bases, rho_a: DensityOperator) -> float:
    """Largest state-weighted chain term over all measurement orderings."""
    return max(v for _, v in weighted_chain_values(bases, rho_a))


def plain_chain_bound(bases, rho_a: DensityOperator) -> float:
    """Memoryless bound -log2(b) + (N-1) S(rho_a) on the entropy sum."""
    bases = tuple(bases)
    _, neg_log_b = chain_overlap_constant(bases)
    return neg_log_b + (len(bases) - 1) * von_neumann_entropy(rho_a)


def plain_weighted_bound(bases, rho_a: DensityOperator) -> float:
    """Memoryless bound (N-1) S(rho_a) + weighted chain constant."""
    bases = tuple(bases)
    return (len(bases) - 1) * von_neumann_entropy(rho_a) + weighted_chain_constant(
        bases, rho_a
    )


def require_pairwise_unbiased(bases) -> None:
    """Raise unless every basis pair has flat squared overlaps 1/d."""
    bases = tuple(bases)
    d = bases[0].dim
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            defect = float(np.abs(bases[i].overlaps(bases[j]) - 1.0 / d).max())
            if defect > MUB_TOL:
                raise ContractError(
                    f"bases {bases[i].label!r} and {bases[j].label!r} are not "
                    f"mutually unbiased, overlap defect {defect:.3e}"
                )


def plain_mub_bound(bases, rho_a: DensityOperator) -> float:
    """Memoryless qubit bound 2 log2(2) + S(rho_a) for three unbiased bases."""
    bases = tuple(bases)
    if len(bases) != 3 or bases[0].dim != 2:
        raise ContractError("this bound needs exactly three qubit bases")
    require_pairwise_unbiased(bases)
    if rho_a.dim != 2:
        raise DimensionError(f"rho_a dimension {rho_a.dim}, expected 2")
    return 2.0 + von_neumann_entropy(rho_a)


def _marginal_terms(rho: DensityOperator) -> dict:
    if len(rho.dims) != 3:
        raise DimensionError(
            f"a tripartite state is required, got {len(rho.dims)} subsystems"
        )
    m = rho.matrix
    dims = rho.dims
    s_a = _vn(partial_trace(m, dims, (0,)))
    s_b = _vn(partial_trace(m, dims, (1,)))
    s_c = _vn(partial_trace(m, dims, (2,)))
    s_ab = _vn(partial_trace(m, dims, (0, 1)))
    s_ac = _vn(partial_trace(m, dims, (0, 2)))
    return {
        "s_a": s_a,
        "s_a_given_b": s_ab - s_b,
        "s_a_given_c": s_ac - s_c,
        "i_ab": s_a + s_b - s_ab,
        "i_ac": s_a + s_c - s_ac,
    }


def _scenario_terms(rho: DensityOperator, scenario: MeasurementScenario) -> dict:
    terms = _marginal_terms(rho)
    if scenario.dim != rho.dims[0]:
        raise DimensionError(
            f"scenario dimension {scenario.dim} does not match subsystem 0 "
            f"dimension {rho.dims[0]}"
        )
    outcome = []
    conditional = []
    chi = []
    for k, basis in enumerate(scenario.bases):
        mem = (scenario.memory_for(k),)
        outcome.append(shannon_entropy(outcome_probabilities(rho, basis, 0)))
        conditional.append(measured_conditional_entropy(rho, basis, 0, mem))
        chi.append(holevo(rho, basis, 0, mem))
    terms["outcome_entropies"] = tuple(outcome)
    terms["conditional_entropies"] = tuple(conditional)
    terms["holevo_terms"] = tuple(chi)
    terms["holevo_sum"] = float(sum(chi))
    terms["uncertainty"] = float(sum(conditional))
    return terms


def _split_bound_from_terms(terms: dict, n: int, constant: float) -> tuple[float, float]:
    ssa_avg = (terms["s_a_given_b"] + terms["s_a_given_c"]) / 2.0
    mi_avg = (terms["i_ab"] + terms["i_ac"]) / 2.0
    delta = (n - 1) * mi_avg - terms["holevo_sum"]
    bound = constant + (n - 1) * ssa_avg + max(0.0, delta)
    return bound, delta


def split_memory_bound(
    rho: DensityOperator, scenario: MeasurementScenario
) -> tuple[float, float, dict]:
    """Main split-memory bound; returns (bound, pre-clamp delta, components)."""
    if len(scenario.bases) < 2:
        raise ContractError("the split-memory bound needs at least two bases")
    terms = _scenario_terms(rho, scenario)
    b, neg_log_b = chain_overlap_constant(scenario.bases)
    bound, delta = _split_bound_from_terms(terms, len(scenario.bases), neg_log_b)
    components = dict(terms)
    components["b"] = b
    components["neg_log2_b"] = neg_log_b
    return bound, delta, components


def weighted_split_memory_bound(
    rho: DensityOperator, scenario: MeasurementScenario
) -> float:
    """Split-memory bound built on the ordering-maximized weighted constant."""
    if len(scenario.bases) < 2:
        raise ContractError("the split-memory bound needs at least two bases")
    terms = _scenario_terms(rho, scenario)
    rho_a = DensityOperator(
        partial_trace(rho.matrix, rho.dims, (0,)), (rho.dims[0],)
    )
    constant = weighted_chain_constant(scenario.bases, rho_a)
    bound, _ = _split_bound_from_terms(terms, len(scenario.bases), constant)
    return bound


def mub_qubit_split_bound(
    rho: DensityOperator, scenario: MeasurementScenario
) -> tuple[float, float]:
    """Split-memory form of the three-MUB qubit bound.

    Returns (bound, pre-clamp delta'). Requires a three-qubit state and
    three pairwise unbiased bases; the partition follows the scenario.
    """
    if len(scenario.bases) != 3:
        raise ContractError("this bound needs exactly three bases")
    if scenario.dim != 2:
        raise ContractError("this bound is specific to qubit measurements")
    require_pairwise_unbiased(scenario.bases)
    terms = _scenario_terms(rho, scenario)
    return _mub_bound_from_terms(terms)


def _mub_bound_from_terms(terms: dict) -> tuple[float, float]:
    ssa_avg = (terms["s_a_given_b"] + terms["s_a_given_c"]) / 2.0
    mi_avg = (terms["i_ab"] + terms["i_ac"]) / 2.0
    delta_prime = 1.0 + mi_avg - terms["holevo_sum"]
    bound = 1.0 + ssa_avg + max(0.0, delta_prime)
    return bound, delta_prime


def convert_plain_bound(
    lb: float, rho: DensityOperator, scenario: MeasurementScenario
) -> float:
    """Turn a memoryless lower bound into a split-memory one.

    Subtracts the summed accessible-information terms of the scenario from
    lb, which must bound the plain entropy sum of the same measurements.
    """
    lb = float(lb)
    if not math.isfinite(lb):
        raise DomainError(f"lower bound {lb!r} is not finite")
    terms = _scenario_terms(rho, scenario)
    return lb - terms["holevo_sum"]


def scenario_uncertainty(rho: DensityOperator, scenario: MeasurementScenario) -> float:
    """U: the summed measured conditional entropies of the scenario."""
    return _scenario_terms(rho, scenario)["uncertainty"]


def pair_overlap_bound(x: ProjectiveBasis, z: ProjectiveBasis) -> float:
    """State-independent bound on H(X|B) + H(Z|C): the pair's -log2(c)."""
    _, q = max_overlap_constant(x, z)
    return q


def bipartite_memory_bound(
    rho: DensityOperator, x: ProjectiveBasis, z: ProjectiveBasis, memory=(1,)
) -> float:
    """Bound on H(X|B) + H(Z|B) with a single memory: -log2(c) + S(A|B)."""
    _, q = max_overlap_constant(x, z)
    mem = tuple(sorted(set(int(k) for k in memory)))
    if not mem or 0 in mem:
        raise ContractError("memory must be a non-empty set excluding the target")
    m = rho.matrix
    s_amem = _vn(partial_trace(m, rho.dims, (0,) + mem))
    s_mem = _vn(partial_trace(m, rho.dims, mem))
    return q + s_amem - s_mem


def two_measurement_split_bound(
    rho: DensityOperator, x: ProjectiveBasis, z: ProjectiveBasis
) -> float:
    """Two-measurement split-memory bound (first basis to B, second to C)."""
    bound, _, _ = split_memory_bound(rho, MeasurementScenario((x, z), 1))
    return bound


@dataclass(frozen=True)
class BoundReport:
    """Everything the CLI and the verifier need about one scenario."""

    labels: tuple
    split: int
    uncertainty: float
    bound_split: float
    bound_weighted: float
    bound_mub: float | None
    delta: float
    delta_prime: float | None
    s_a: float
    s_a_given_b: float
    s_a_given_c: float
    i_ab: float
    i_ac: float
    outcome_entropies: tuple
    conditional_entropies: tuple
    holevo_terms: tuple
    constants: dict

    @property
    def holevo_sum(self) -> float:
        return float(sum(self.holevo_terms))

    @property
    def slack_split(self) -> float:
        return self.uncertainty - self.bound_split

    @property
    def slack_weighted(self) -> float:
        return self.uncertainty - self.bound_weighted

    @property
    def slack_mub(self) -> float | None:
        if self.bound_mub is None:
            return None
        return self.uncertainty - self.bound_mub

    @property
    def slack(self) -> float:
        slacks = [self.slack_split, self.slack_weighted]
        if self.bound_mub is not None:
            slacks.append(self.slack_mub)
        return min(slacks)

    @property
    def tightness_gap(self) -> float | None:
        """bound_mub - bound_split; equals 1 - S(A) while both clamps bind."""
        if self.bound_mub is None:
            return None
        return self.bound_mub - self.bound_split

    def decomposition_residual(self) -> float:
        """How far the entropy sum drifts from its conditional split."""
        total = sum(self.outcome_entropies)
        parts = sum(self.conditional_entropies) + self.holevo_sum
        return float(total - parts)

    def entropy_split_residual(self) -> float:
        """S(A) minus its conditional-plus-mutual average decomposition."""
        ssa_avg = (self.s_a_given_b + self.s_a_given_c) / 2.0
        mi_avg = (self.i_ab + self.i_ac) / 2.0
        return float(self.s_a - ssa_avg - mi_avg)

    def to_dict(self) -> dict:
        def f(x):
            return None if x is None else float(x)

        return {
            "labels": list(self.labels),
            "split": int(self.split),
            "U": f(self.uncertainty),
            "L1": f(self.bound_split),
            "L2": f(self.bound_mub),
            "weighted": f(self.bound_weighted),
            "delta": f(self.delta),
            "delta_prime": f(self.delta_prime),
            "S_A": f(self.s_a),
            "S_AB": f(self.s_a_given_b),
            "S_AC": f(self.s_a_given_c),
            "I_AB": f(self.i_ab),
            "I_AC": f(self.i_ac),
            "outcome_entropies": [f(x) for x in self.outcome_entropies],
            "conditional_entropies": [f(x) for x in self.conditional_entropies],
            "holevo_terms": [f(x) for x in self.holevo_terms],
            "holevo_sum": f(self.holevo_sum),
            "constants": {k: f(v) for k, v in self.constants.items()},
            "slack_L1": f(self.slack_split),
            "slack_L2": f(self.slack_mub),
            "slack_weighted": f(self.slack_weighted),
        }


def _is_pairwise_unbiased(bases) -> bool:
    try:
        require_pairwise_unbiased(bases)
        return True
    except ContractError:
        return False


def bound_report(rho: DensityOperator, scenario: MeasurementScenario) -> BoundReport:
    """Evaluate the scenario once and collect every quantity of interest.

    The MUB bound is filled in only for three pairwise unbiased qubit
    bases; the pair constants only for two-basis scenarios.
    """
    if len(scenario.bases) < 2:
        raise ContractError("a report needs at least two bases")
    terms = _scenario_terms(rho, scenario)
    n = len(scenario.bases)
    b, neg_log_b = chain_overlap_constant(scenario.bases)
    bound_split, delta = _split_bound_from_terms(terms, n, neg_log_b)
    rho_a = DensityOperator(
        partial_trace(rho.matrix, rho.dims, (0,)), (rho.dims[0],)
    )
    weighted = weighted_chain_constant(scenario.bases, rho_a)
    bound_weighted, _ = _split_bound_from_terms(terms, n, weighted)
    constants = {"b": b, "neg_log2_b": neg_log_b, "weighted_chain": weighted}
    bound_mub = None
    delta_prime = None
    if n == 3 and scenario.dim == 2 and _is_pairwise_unbiased(scenario.bases):
        bound_mub, delta_prime = _mub_bound_from_terms(terms)
    if n == 2:
        c, q = max_overlap_constant(scenario.bases[0], scenario.bases[1])
        constants["c"] = c
        constants["q_mu"] = q
    return BoundReport(
        labels=scenario.labels,
        split=scenario.split,
        uncertainty=terms["uncertainty"],
        bound_split=bound_split,
        bound_weighted=bound_weighted,
        bound_mub=bound_mub,
        delta=delta,
        delta_prime=delta_prime,
        s_a=terms["s_a"],
        s_a_given_b=terms["s_a_given_b"],
        s_a_given_c=terms["s_a_given_c"],
        i_ab=terms["i_ab"],
        i_ac=terms["i_ac"],
        outcome_entropies=terms["outcome_entropies"],
        conditional_entropies=terms["conditional_entropies"],
        holevo_terms=terms["holevo_terms"],
        constants=constants,
    )
