"""Entropy layer: states, bases, measurements, conditional quantities."""

import math

import numpy as np
import pytest

from eurkit.entropy import (
    DensityOperator,
    ProjectiveBasis,
    conditional_entropy,
    entropy_of_spectrum,
    holevo,
    measure_subsystem,
    measured_conditional_entropy,
    mutual_information,
    outcome_probabilities,
    shannon_entropy,
    von_neumann_entropy,
)
from eurkit.errors import (
    ContractError,
    DimensionError,
    DomainError,
    PositivityError,
)
from eurkit.states import ghz_state, pauli_bases, random_density


def bell_state():
    ket = np.zeros(4, dtype=complex)
    ket[0] = ket[3] = 1.0 / math.sqrt(2.0)
    return DensityOperator(np.outer(ket, ket.conj()), (2, 2))


def entropy_oracle(matrix):
    vals = np.linalg.eigvalsh(matrix)
    vals = vals[vals > 1e-14]
    return float(-(vals @ np.log2(vals)))


def test_shannon_entropy_basics():
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-12)
    assert shannon_entropy([1.0, 0.0]) == 0.0
    assert shannon_entropy([0.5, 0.5 - 1e-13, 1e-13]) == pytest.approx(1.0, abs=1e-9)


def test_shannon_entropy_rejects_bad_distributions():
    with pytest.raises(DomainError):
        shannon_entropy([0.7, 0.2])
    with pytest.raises(DomainError):
        shannon_entropy([1.1, -0.1])


def test_spectrum_entropy_clamps_roundoff_only():
    assert entropy_of_spectrum([1.0, -5e-11]) == 0.0
    with pytest.raises(PositivityError):
        entropy_of_spectrum([1.0, -1e-9])


def test_von_neumann_entropy_reference_points():
    mixed = DensityOperator(np.eye(8) / 8.0, (2, 2, 2))
    assert von_neumann_entropy(mixed) == pytest.approx(3.0, abs=1e-12)
    assert von_neumann_entropy(ghz_state()) == pytest.approx(0.0, abs=1e-10)


def test_density_operator_validation():
    with pytest.raises(ContractError):
        DensityOperator(np.array([[0, 1], [0, 1]], dtype=complex), (2,))
    with pytest.raises(ContractError):
        DensityOperator(np.eye(2, dtype=complex), (2,))
    with pytest.raises(PositivityError):
        DensityOperator(np.diag([1.2, -0.2]).astype(complex), (2,))
    with pytest.raises(DimensionError):
        DensityOperator(np.eye(4, dtype=complex) / 4.0, (2, 3))


def test_density_operator_reduced_and_eigenvalues():
    rho = ghz_state()
    a = rho.reduced((0,))
    assert np.abs(a.matrix - np.eye(2) / 2.0).max() < 1e-12
    assert np.abs(rho.eigenvalues[-1] - 1.0) < 1e-10


def test_projective_basis_validation_and_overlaps():
    with pytest.raises(ContractError):
        ProjectiveBasis("bad", np.array([[1, 0], [1, 0]], dtype=complex))
    px, _, pz = pauli_bases()
    assert np.abs(px.overlaps(pz) - 0.5).max() < 1e-12


def test_conditional_entropy_reference_values():
    ghz = ghz_state()
    assert conditional_entropy(ghz, (0,), (1,)) == pytest.approx(0.0, abs=1e-10)
    assert conditional_entropy(bell_state(), (0,), (1,)) == pytest.approx(
        -1.0, abs=1e-10
    )
    product = DensityOperator(np.eye(4) / 4.0, (2, 2))
    assert conditional_entropy(product, (0,), (1,)) == pytest.approx(1.0, abs=1e-12)


def test_mutual_information_reference_values():
    assert mutual_information(ghz_state(), (0,), (1,)) == pytest.approx(
        1.0, abs=1e-10
    )
    assert mutual_information(bell_state(), (0,), (1,)) == pytest.approx(
        2.0, abs=1e-10
    )
    product = DensityOperator(np.eye(4) / 4.0, (2, 2))
    assert mutual_information(product, (0,), (1,)) == pytest.approx(0.0, abs=1e-12)


def test_mutual_information_is_symmetric_and_nonnegative():
    for stream in range(6):
        rho = random_density((2, 2, 2), seed=17, stream=stream)
        ab = mutual_information(rho, (0,), (1,))
        ba = mutual_information(rho, (1,), (0,))
        assert ab == pytest.approx(ba, abs=1e-10)
        assert ab >= -1e-9


def _embedded_projectors(basis, dims, target):
    eye_before = np.eye(int(np.prod(dims[:target], initial=1)), dtype=complex)
    eye_after = np.eye(int(np.prod(dims[target + 1 :], initial=1)), dtype=complex)
    for ket in basis.vectors:
        pk = np.outer(ket, ket.conj())
        yield np.kron(eye_before, np.kron(pk, eye_after))


@pytest.mark.parametrize("target", [0, 1, 2])
def test_measurement_matches_projector_algebra(target):
    rho = random_density((2, 2, 2), seed=23, stream=target)
    px = pauli_bases()[0]
    post, ensemble = measure_subsystem(rho, px, target)
    dims = rho.dims

    want = np.zeros_like(rho.matrix)
    probs = []
    for proj in _embedded_projectors(px, dims, target):
        want += proj @ rho.matrix @ proj
        probs.append(float(np.trace(proj @ rho.matrix).real))
    assert np.abs(post.matrix - want).max() < 1e-12
    assert np.abs(ensemble.probabilities - np.array(probs)).max() < 1e-12
    assert np.abs(
        outcome_probabilities(rho, px, target) - np.array(probs)
    ).max() < 1e-12

    keep = tuple(k for k in range(3) if k != target)
    for i, proj in enumerate(_embedded_projectors(px, dims, target)):
        block = proj @ rho.matrix @ proj
        reduced = DensityOperator(block / probs[i], dims).reduced(keep)
        assert np.abs(ensemble.conditional_states[i].matrix - reduced.matrix).max() < 1e-11


def test_dephasing_never_lowers_entropy():
    for stream in range(5):
        rho = random_density((2, 2), seed=29, stream=stream)
        post, _ = measure_subsystem(rho, pauli_bases()[1], 0)
        assert von_neumann_entropy(post) >= von_neumann_entropy(rho) - 1e-10


def test_measured_conditional_entropy_matches_block_oracle():
    for stream in range(5):
        rho = random_density((2, 2, 2), seed=31, stream=stream)
        for basis in pauli_bases():
            for memory in ((1,), (2,)):
                got = measured_conditional_entropy(rho, basis, 0, memory)
                pair = rho.reduced((0,) + memory)
                probs, blocks = [], []
                for proj in _embedded_projectors(basis, pair.dims, 0):
                    block = proj @ pair.matrix @ proj
                    probs.append(float(np.trace(block).real))
                    blocks.append(
                        DensityOperator(block / probs[-1], pair.dims).reduced((1,))
                    )
                cq = np.zeros_like(pair.matrix)
                d = blocks[0].matrix.shape[0]
                for i, blk in enumerate(blocks):
                    lift = np.zeros((len(blocks), len(blocks)), dtype=complex)
                    lift[i, i] = 1.0
                    cq += probs[i] * np.kron(lift, blk.matrix)
                mem = pair.reduced((1,))
                want = entropy_oracle(cq) - entropy_oracle(mem.matrix)
                assert got == pytest.approx(want, abs=1e-10)


def test_accessible_information_matches_ensemble_oracle():
    for stream in range(5):
        rho = random_density((2, 2, 2), seed=37, stream=stream)
        for basis in pauli_bases():
            got = holevo(rho, basis, 0, (1,))
            pair = rho.reduced((0, 1))
            mem = pair.reduced((1,))
            total = entropy_oracle(mem.matrix)
            avg = 0.0
            for proj in _embedded_projectors(basis, pair.dims, 0):
                block = proj @ pair.matrix @ proj
                p = float(np.trace(block).real)
                if p < 1e-12:
                    continue
                sub = DensityOperator(block / p, pair.dims).reduced((1,))
                avg += p * entropy_oracle(sub.matrix)
            assert got == pytest.approx(total - avg, abs=1e-10)
            assert -1e-10 <= got <= total + 1e-10


def test_outcome_entropy_splits_into_conditional_plus_accessible():
    for stream in range(5):
        rho = random_density((2, 2, 2), seed=41, stream=stream)
        for basis in pauli_bases():
            h_m = shannon_entropy(outcome_probabilities(rho, basis, 0))
            for memory in ((1,), (2,)):
                h_cond = measured_conditional_entropy(rho, basis, 0, memory)
                gain = holevo(rho, basis, 0, memory)
                assert h_m == pytest.approx(h_cond + gain, abs=1e-9)


def test_ghz_measurement_reference_values():
    ghz = ghz_state()
    px, py, pz = pauli_bases()
    assert holevo(ghz, pz, 0, (1,)) == pytest.approx(1.0, abs=1e-9)
    assert holevo(ghz, px, 0, (1,)) == pytest.approx(0.0, abs=1e-9)
    assert holevo(ghz, py, 0, (1,)) == pytest.approx(0.0, abs=1e-9)
    assert measured_conditional_entropy(ghz, pz, 0, (2,)) == pytest.approx(
        0.0, abs=1e-9
    )
    assert measured_conditional_entropy(ghz, px, 0, (1,)) == pytest.approx(
        1.0, abs=1e-9
    )


def test_measurement_needs_a_remaining_subsystem():
    single = DensityOperator(np.eye(2) / 2.0, (2,))
    with pytest.raises(DimensionError):
        measure_subsystem(single, pauli_bases()[0], 0)
