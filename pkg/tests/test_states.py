"""State families, closed forms, and seeded random ensembles."""

import math

import numpy as np
import pytest

from eurkit.bounds import MeasurementScenario, bound_report
from eurkit.errors import ContractError, DimensionError, DomainError
from eurkit.states import (
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


def test_pauli_bases_are_pairwise_unbiased():
    px, py, pz = pauli_bases()
    assert (px.label, py.label, pz.label) == ("x", "y", "z")
    for a, b in ((px, py), (px, pz), (py, pz)):
        assert np.abs(a.overlaps(b) - 0.5).max() < 1e-12
    assert np.abs(px.vectors[0] - np.array([1, 1]) / math.sqrt(2)).max() < 1e-12


def test_ghz_state_is_pure_with_mixed_margins():
    ghz = ghz_state()
    assert np.trace(ghz.matrix @ ghz.matrix).real == pytest.approx(1.0, abs=1e-12)
    assert np.abs(ghz.reduced((0,)).matrix - np.eye(2) / 2.0).max() < 1e-12


@pytest.mark.parametrize("p", [0.0, 0.25, 0.4, 0.75, 1.0])
def test_ghz_mixture_construction(p):
    rho = make_werner(p)
    assert np.abs(np.trace(rho.matrix) - 1.0) < 1e-12
    assert np.abs(rho.matrix - rho.matrix.conj().T).max() < 1e-12
    vals = np.sort(np.linalg.eigvalsh(rho.matrix))
    want = np.array([p / 8.0] * 7 + [1.0 - 7.0 * p / 8.0])
    assert np.abs(vals - want).max() < 1e-12


def test_ghz_mixture_rejects_bad_weight():
    with pytest.raises(DomainError):
        make_werner(-0.1)
    with pytest.raises(DomainError):
        make_werner(1.1)


def test_w_ket_component_layout():
    theta, phi = 0.7, 0.4
    v = w_ket(theta, phi)
    assert v[4] == pytest.approx(math.sin(theta) * math.cos(phi), abs=1e-15)
    assert v[2] == pytest.approx(math.sin(theta) * math.sin(phi), abs=1e-15)
    assert v[1] == pytest.approx(math.cos(theta), abs=1e-15)
    assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
    assert sum(abs(x) > 0 for x in v) <= 3


def test_generalized_w_state_is_pure():
    rho = make_generalized_w(0.9)
    assert np.trace(rho.matrix @ rho.matrix).real == pytest.approx(1.0, abs=1e-12)


def test_ghz_mixture_closed_form_reference_points():
    assert closed_form_werner(0.0) == pytest.approx(2.0, abs=1e-9)
    assert closed_form_werner(1.0) == pytest.approx(3.0, abs=1e-9)
    for p in (0.1, 0.5, 0.9):
        want = -(p / 2.0) * math.log2(p / 8.0) - ((2.0 - p) / 2.0) * math.log2(
            (2.0 - p) / 8.0
        )
        assert closed_form_werner(p) == pytest.approx(want, abs=1e-12)


def test_wstate_terms_at_theta_zero():
    terms = wstate_terms(0.0)
    assert terms["gamma_plus"] == pytest.approx(2.0, abs=1e-12)
    assert terms["gamma_minus"] == pytest.approx(0.0, abs=1e-12)


def test_wstate_terms_all_finite_at_quarter_turn():
    terms = wstate_terms(math.pi / 4.0)
    assert len(terms) == 8
    for value in terms.values():
        assert math.isfinite(value)


@pytest.mark.parametrize("case_id", [1, 2])
@pytest.mark.parametrize("theta", [0.0, math.pi / 4.0, 1.1, math.pi / 2.0])
def test_wstate_closed_forms_match_numeric_pipeline(case_id, theta):
    split = 2 if case_id == 1 else 1
    scenario = MeasurementScenario(pauli_bases(), split=split)
    rep = bound_report(make_generalized_w(theta), scenario)
    u, l1, l2 = closed_form_wstate(theta, case_id)
    assert rep.uncertainty == pytest.approx(u, abs=1e-9)
    assert rep.bound_split == pytest.approx(l1, abs=1e-9)
    assert rep.bound_mub == pytest.approx(l2, abs=1e-9)


def test_curve_helpers_expose_named_expressions():
    curve = werner_curve(1)
    row = curve.evaluate(0.3)
    assert set(row) == {"U", "L1", "L2"}
    assert row["U"] == row["L1"] == row["L2"]
    wcurve = wstate_curve(2)
    row = wcurve.evaluate(0.5)
    assert row["U"] == pytest.approx(closed_form_wstate(0.5, 2)[0], abs=1e-12)
    with pytest.raises(DomainError):
        werner_curve(3)


def test_state_family_dispatch():
    fam = StateFamily("werner")
    assert fam.parameter_name == "p"
    assert fam.parameter_range == (0.0, 1.0)
    assert np.abs(fam.build(0.0).matrix - ghz_state().matrix).max() < 1e-12
    wfam = StateFamily("wstate", phi=0.3)
    assert wfam.parameter_range == (0.0, math.pi)
    built = wfam.build(0.8)
    direct = make_generalized_w(0.8, 0.3)
    assert np.abs(built.matrix - direct.matrix).max() < 1e-12
    with pytest.raises(ContractError):
        StateFamily("thermal")


def test_random_density_reproducible_and_valid():
    a = random_density((2, 2, 2), seed=5, stream=9)
    b = random_density((2, 2, 2), seed=5, stream=9)
    c = random_density((2, 2, 2), seed=5, stream=10)
    assert np.array_equal(a.matrix, b.matrix)
    assert np.abs(a.matrix - c.matrix).max() > 1e-3
    assert np.abs(np.trace(a.matrix) - 1.0) < 1e-12
    assert np.linalg.eigvalsh(a.matrix).min() > -1e-12


def test_random_density_dimension_cap():
    with pytest.raises(DimensionError):
        random_density((9, 8), seed=1)


def test_random_seed_domain():
    with pytest.raises(DomainError):
        random_density((2, 2), seed=-1)
    with pytest.raises(DomainError):
        random_density((2, 2), seed=2**64)


def test_random_pure_has_unit_purity():
    rho = random_pure((2, 2, 2), seed=8, stream=3)
    assert np.trace(rho.matrix @ rho.matrix).real == pytest.approx(1.0, abs=1e-12)


def test_random_ensemble_mean_approaches_maximally_mixed():
    total = np.zeros((8, 8), dtype=complex)
    for stream in range(1000):
        total += random_density((2, 2, 2), seed=3, stream=stream).matrix
    mean = total / 1000.0
    assert np.abs(mean - np.eye(8) / 8.0).max() < 0.05


def test_random_bases_are_orthonormal_and_reproducible():
    b1 = random_basis(2, seed=6, stream=2)
    b2 = random_basis(2, seed=6, stream=2)
    assert np.array_equal(b1.vectors, b2.vectors)
    gram = b1.vectors.conj() @ b1.vectors.T
    assert np.abs(gram - np.eye(2)).max() < 1e-12
    triple = random_basis_triple(2, seed=6, stream=4)
    assert tuple(b.label for b in triple) == ("r0", "r1", "r2")
    assert np.abs(triple[0].vectors - triple[1].vectors).max() > 1e-3
