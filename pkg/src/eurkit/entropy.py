"""Entropies, projective measurements, and accessible information.

All entropies are base 2 and returned in bits. States are immutable
DensityOperator values; subsystems are addressed by 0-based index into
dims, so for the tripartite conventions used elsewhere in the package the
measured party sits at index 0 and the two memories at 1 and 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ContractError, DimensionError, DomainError, PositivityError
from .linalg import (
    as_operator,
    hermitian_eigenvalues,
    hermiticity_defect,
    partial_trace,
)

TRACE_TOL = 1e-9
MIN_EIG_TOL = 1e-9
GRAM_TOL = 1e-10
ENTROPY_CLAMP = 1e-10
PROB_FLOOR = 1e-12
PROB_NEG_TOL = 1e-12


def _check_dims(dims, size: int) -> tuple[int, ...]:
    out = tuple(int(d) for d in dims)
    if not out or any(d < 1 for d in out):
        raise DimensionError(f"invalid subsystem dimensions {out}")
    if math.prod(out) != size:
        raise DimensionError(
            f"subsystem dimensions {out} do not multiply to {size}"
        )
    return out


@dataclass(frozen=True)
class DensityOperator:
    """A validated density matrix together with its tensor factorization."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = as_operator(self.matrix)
        dims = _check_dims(self.dims, m.shape[0])
        defect = hermiticity_defect(m)
        if defect > TRACE_TOL:
            raise ContractError(f"density matrix not Hermitian, defect {defect:.3e}")
        tr = m.trace()
        if abs(tr - 1.0) > TRACE_TOL:
            raise ContractError(f"density matrix trace {tr:.12g} is not 1")
        _require_positive(m)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues of the full state."""
        vals = hermitian_eigenvalues(self.matrix)
        vals.setflags(write=False)
        return vals

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def reduced(self, keep) -> "DensityOperator":
        """Partial trace onto the listed subsystems."""
        keep = tuple(sorted(set(int(k) for k in keep)))
        sub = partial_trace(self.matrix, self.dims, keep)
        return DensityOperator(sub, tuple(self.dims[k] for k in keep))


def _require_positive(m: np.ndarray) -> None:
    # A Cholesky factorization of the shifted matrix certifies the spectral
    # bound without an eigendecomposition; only suspect inputs pay for one.
    n = m.shape[0]
    shifted = m + (MIN_EIG_TOL * 1.0) * np.eye(n)
    try:
        np.linalg.cholesky(shifted)
        return
    except np.linalg.LinAlgError:
        pass
    low = float(hermitian_eigenvalues(m)[0])
    if low < -MIN_EIG_TOL:
        raise PositivityError(f"minimum eigenvalue {low:.3e} below {-MIN_EIG_TOL}")


@dataclass(frozen=True)
class ProjectiveBasis:
    """An orthonormal measurement basis; vectors[i] is the i-th ket."""

    label: str
    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=np.complex128, order="C")
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DimensionError(
                f"basis {self.label!r} needs d vectors of length d, got {v.shape}"
            )
        gram = v.conj() @ v.T
        defect = float(np.abs(gram - np.eye(v.shape[0])).max())
        if defect > GRAM_TOL:
            raise ContractError(
                f"basis {self.label!r} is not orthonormal, Gram defect {defect:.3e}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "label", str(self.label))

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def overlaps(self, other: "ProjectiveBasis") -> np.ndarray:
        """Matrix of squared overlaps |<u_i|v_j>|^2."""
        if other.dim != self.dim:
            raise DimensionError("bases act on different dimensions")
        inner = self.vectors.conj() @ other.vectors.T
        return np.abs(inner) ** 2


@dataclass(frozen=True)
class MeasurementOutcomeEnsemble:
    """Outcome probabilities and the post-selected states they herald.

    conditional_states[i] is None when probabilities[i] falls below
    PROB_FLOOR; such outcomes carry no usable conditional state and are
    skipped by accessible-information averages.
    """

    probabilities: np.ndarray
    conditional_states: tuple

    def __post_init__(self):
        p = np.array(self.probabilities, dtype=np.float64)
        if p.ndim != 1 or len(p) != len(self.conditional_states):
            raise DimensionError("one probability per conditional state required")
        if p.min() < -PROB_NEG_TOL:
            raise DomainError(f"negative outcome probability {p.min():.3e}")
        if abs(p.sum() - 1.0) > TRACE_TOL:
            raise DomainError(f"outcome probabilities sum to {p.sum():.12g}")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "conditional_states", tuple(self.conditional_states))


def entropy_of_spectrum(values) -> float:
    """Shannon entropy in bits of a spectrum, clamping tiny negatives."""
    w = np.asarray(values, dtype=np.float64).ravel()
    if w.size and float(w.min()) < -ENTROPY_CLAMP:
        raise PositivityError(
            f"spectrum entry {float(w.min()):.3e} below {-ENTROPY_CLAMP}"
        )
    pos = w[w > 0.0]
    if pos.size == 0:
        return 0.0
    return float(-(pos @ np.log2(pos)))


def shannon_entropy(probabilities) -> float:
    """Shannon entropy in bits of a probability vector."""
    p = np.asarray(probabilities, dtype=np.float64).ravel()
    if p.size == 0:
        raise DomainError("empty probability vector")
    if float(p.min()) < -PROB_NEG_TOL:
        raise DomainError(f"negative probability {float(p.min()):.3e}")
    total = float(p.sum())
    if abs(total - 1.0) > TRACE_TOL:
        raise DomainError(f"probabilities sum to {total:.12g}, expected 1")
    pos = p[p > 0.0]
    return float(-(pos @ np.log2(pos)))


def _vn(matrix: np.ndarray) -> float:
    return entropy_of_spectrum(hermitian_eigenvalues(matrix))


def von_neumann_entropy(rho: DensityOperator) -> float:
    """Von Neumann entropy in bits."""
    return entropy_of_spectrum(rho.eigenvalues)


def _subset(rho: DensityOperator, subs) -> tuple[int, ...]:
    out = tuple(sorted(set(int(s) for s in subs)))
    if out and (out[0] < 0 or out[-1] >= len(rho.dims)):
        raise DimensionError(
            f"subsystem indices {out} outside 0..{len(rho.dims) - 1}"
        )
    return out


def conditional_entropy(rho: DensityOperator, sub_a, sub_b) -> float:
    """S(A|B) = S(rho_AB) - S(rho_B) for disjoint index sets.

    Can be negative for entangled states, down to -log2(dim A).
    """
    a = _subset(rho, sub_a)
    b = _subset(rho, sub_b)
    if not a:
        raise DimensionError("sub_a must name at least one subsystem")
    if set(a) & set(b):
        raise ContractError(f"subsystems {set(a) & set(b)} appear on both sides")
    s_ab = _vn(partial_trace(rho.matrix, rho.dims, a + b))
    s_b = _vn(partial_trace(rho.matrix, rho.dims, b)) if b else 0.0
    return s_ab - s_b


def mutual_information(rho: DensityOperator, sub_a, sub_b) -> float:
    """I(A:B) = S(A) + S(B) - S(AB); tiny negatives are roundoff."""
    a = _subset(rho, sub_a)
    b = _subset(rho, sub_b)
    if not a or not b:
        raise DimensionError("both index sets must be non-empty")
    if set(a) & set(b):
        raise ContractError(f"subsystems {set(a) & set(b)} appear on both sides")
    s_a = _vn(partial_trace(rho.matrix, rho.dims, a))
    s_b = _vn(partial_trace(rho.matrix, rho.dims, b))
    s_ab = _vn(partial_trace(rho.matrix, rho.dims, a + b))
    return s_a + s_b - s_ab


def _check_target(rho_dims: tuple[int, ...], basis: ProjectiveBasis, target: int) -> int:
    target = int(target)
    if target < 0 or target >= len(rho_dims):
        raise DimensionError(f"target {target} outside 0..{len(rho_dims) - 1}")
    if basis.dim != rho_dims[target]:
        raise DimensionError(
            f"basis {basis.label!r} has dimension {basis.dim}, "
            f"subsystem {target} has {rho_dims[target]}"
        )
    return target


def _embedded_projector(dims, target: int, ket: np.ndarray) -> np.ndarray:
    pre = math.prod(dims[:target])
    post = math.prod(dims[target + 1 :])
    proj = np.outer(ket, ket.conj())
    return np.kron(np.kron(np.eye(pre), proj), np.eye(post))


def _dephased(matrix: np.ndarray, dims, target: int, basis: ProjectiveBasis) -> np.ndarray:
    out = np.zeros_like(matrix)
    for ket in basis.vectors:
        p = _embedded_projector(dims, target, ket)
        out += p @ matrix @ p
    return out


def _outcome_blocks(matrix: np.ndarray, dims, target: int, basis: ProjectiveBasis):
    """Unnormalized post-selected operators <u_i| rho |u_i> on the rest."""
    n = len(dims)
    d = dims[target]
    rest = matrix.shape[0] // d
    tensor = matrix.reshape(dims + dims)
    tensor = np.moveaxis(tensor, (target, n + target), (0, 1))
    flat = tensor.reshape(d, d, rest, rest)
    blocks = np.einsum("abrs,ia,ib->irs", flat, basis.vectors.conj(), basis.vectors)
    probs = np.einsum("irr->i", blocks).real.copy()
    return probs, blocks


def outcome_probabilities(rho: DensityOperator, basis: ProjectiveBasis, target: int = 0) -> np.ndarray:
    """Born probabilities for measuring basis on the target subsystem."""
    target = _check_target(rho.dims, basis, target)
    if len(rho.dims) == 1:
        inner = basis.vectors.conj() @ rho.matrix @ basis.vectors.T
        return np.diag(inner).real.copy()
    probs, _ = _outcome_blocks(rho.matrix, rho.dims, target, basis)
    return probs


def measure_subsystem(rho: DensityOperator, basis: ProjectiveBasis, target: int):
    """Projectively measure one subsystem.

    Returns the dephased post-measurement state on the full system and the
    ensemble of outcome probabilities with conditional states on the
    remaining subsystems.
    """
    target = _check_target(rho.dims, basis, target)
    if len(rho.dims) < 2:
        raise DimensionError("measurement needs at least one remaining subsystem")
    post = _dephased(rho.matrix, rho.dims, target, basis)
    probs, blocks = _outcome_blocks(rho.matrix, rho.dims, target, basis)
    rest_dims = tuple(d for k, d in enumerate(rho.dims) if k != target)
    states = []
    for p, block in zip(probs, blocks):
        if p < PROB_FLOOR:
            states.append(None)
        else:
            states.append(DensityOperator(block / p, rest_dims))
    ensemble = MeasurementOutcomeEnsemble(probs, tuple(states))
    return DensityOperator(post, rho.dims), ensemble


def _memory_set(rho: DensityOperator, target: int, memory) -> tuple[int, ...]:
    mem = _subset(rho, memory)
    if not mem:
        raise DimensionError("memory must name at least one subsystem")
    if target in mem:
        raise ContractError(f"target {target} cannot be part of the memory")
    return mem


def measured_conditional_entropy(
    rho: DensityOperator, basis: ProjectiveBasis, target: int, memory
) -> float:
    """H(M|memory): entropy of the measured joint state minus S(memory).

    The measured joint state is the post-measurement state reduced to the
    target plus memory; its entropy is computed directly from that matrix.
    """
    target = _check_target(rho.dims, basis, target)
    mem = _memory_set(rho, target, memory)
    keep = tuple(sorted((target, *mem)))
    sub = partial_trace(rho.matrix, rho.dims, keep)
    sub_dims = tuple(rho.dims[k] for k in keep)
    tpos = keep.index(target)
    cq = _dephased(sub, sub_dims, tpos, basis)
    s_mem = _vn(partial_trace(rho.matrix, rho.dims, mem))
    return _vn(cq) - s_mem


def holevo(rho: DensityOperator, basis: ProjectiveBasis, target: int, memory) -> float:
    """Accessible-information upper bound I(M:memory) for one measurement.

    S(rho_memory) minus the average entropy of the post-selected memory
    states; outcomes below PROB_FLOOR are skipped.
    """
    target = _check_target(rho.dims, basis, target)
    mem = _memory_set(rho, target, memory)
    keep = tuple(sorted((target, *mem)))
    sub = partial_trace(rho.matrix, rho.dims, keep)
    sub_dims = tuple(rho.dims[k] for k in keep)
    tpos = keep.index(target)
    probs, blocks = _outcome_blocks(sub, sub_dims, tpos, basis)
    rho_mem = blocks.sum(axis=0)
    value = _vn(rho_mem)
    for p, block in zip(probs, blocks):
        if p >= PROB_FLOOR:
            value -= p * _vn(block / p)
    return value
