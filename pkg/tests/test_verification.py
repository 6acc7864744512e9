"""Randomized check suite: corpus layout, determinism, reporting."""

import pytest

from eurkit.errors import ContractError, DomainError
from eurkit.verification import CheckFailure, run_verification, worker_count


def test_report_is_deterministic():
    a = run_verification(count=8, seed=5)
    b = run_verification(count=8, seed=5)
    assert a == b
    assert a.to_dict() == b.to_dict()


def test_worker_partitioning_does_not_change_the_report():
    single = run_verification(count=12, seed=5, threads=1)
    split = run_verification(count=12, seed=5, threads=4)
    assert single == split


def test_check_count_arithmetic():
    # per state: two named-triple reports of 7 checks each, the memory
    # entropy sum, and the 5 pair checks; every fifth state adds two
    # random-triple reports of 6 checks each
    report = run_verification(count=5, seed=1)
    assert report.checked == 4 * (7 + 7 + 1 + 5) + (7 + 7 + 12 + 1 + 5)
    assert report.violations == 0
    assert report.worst_margin >= 0.0


def test_known_offender_is_reported_with_its_margin():
    report = run_verification(count=10, seed=42)
    names = {f.name for f in report.failures}
    assert names == {"pair-split"}
    failure = report.failures[0]
    assert failure == CheckFailure(
        "pair-split", 8, pytest.approx(-0.014007677650973882, abs=1e-12)
    )
    assert report.violations == len(report.failures) == 1
    assert report.worst_margin == pytest.approx(failure.margin, abs=1e-12)


def test_raw_delta_and_plain_pair_checks_stay_clean():
    report = run_verification(count=60, seed=42)
    for failure in report.failures:
        assert failure.name == "pair-split"


def test_report_dict_schema():
    report = run_verification(count=2, seed=3)
    assert list(report.to_dict()) == ["checked", "violations", "worst_margin", "seed"]
    assert report.to_dict()["seed"] == 3


def test_contract_validation():
    with pytest.raises(ContractError):
        run_verification(count=0, seed=1)
    with pytest.raises(ContractError):
        run_verification(count=1, seed=1, dims=(2, 2))
    with pytest.raises(DomainError):
        run_verification(count=1, seed=1, tol=0.0)


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv("EUR_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("EUR_THREADS", "6")
    assert worker_count() == 6
    monkeypatch.setenv("EUR_THREADS", "zero")
    assert worker_count() == 1
    monkeypatch.setenv("EUR_THREADS", "-2")
    assert worker_count() == 1


def test_nonqubit_dimensions_use_random_triples():
    report = run_verification(count=2, seed=9, dims=(3, 3, 3))
    # two random-triple reports of 6 checks, memory entropies, 5 pair checks
    assert report.checked == 2 * (6 + 6 + 1 + 5)
    assert report.violations == 0
