"""Unit tests for the verification suites."""

import math
from unittest.mock import Mock, patch

import pytest

from growthindex.config.models import EstimatorSettings, SuiteCase
from growthindex.core.errors import DomainError
from growthindex.core.verdict import fails, holds, inconclusive
from growthindex.core.verifier import (
    SuiteReport,
    Verifier,
    expectation_verdict,
    index_predicate,
)


class TestPredicates:
    """Tests for index_predicate and expectation_verdict."""

    @pytest.mark.parametrize(
        ("value", "expected"),
        [(1.2, True), (0.9, False), (1.01, None), (math.nan, None), (math.inf, True)],
    )
    def test_index_predicate(self, value: float, expected: bool | None) -> None:
        """Test the three-way comparison with a threshold of 1."""
        assert index_predicate(value, 1.0, 0.05) is expected

    def test_expectation_met(self) -> None:
        """Test a finite expectation within tolerance."""
        verdict = expectation_verdict("alpha", 0.52, 0.5, 0.1)
        assert verdict.holds
        assert verdict.id == "alpha_expected"
        assert verdict.witness["estimate"] == 0.52

    def test_expectation_missed(self) -> None:
        """Test a finite expectation outside tolerance."""
        assert expectation_verdict("beta", 0.8, 0.5, 0.1).fails

    @pytest.mark.parametrize(("estimate", "met"), [(25.0, True), (math.inf, True), (5.0, False)])
    def test_infinite_expectation(self, estimate: float, met: bool) -> None:
        """Test that an infinite expectation needs an estimate of at least 1/tolerance."""
        assert expectation_verdict("mu", estimate, math.inf, 0.1).holds is met


class TestVerifier:
    """Tests for Verifier.run with patched checks."""

    def test_unknown_suite(self) -> None:
        """Test that an unknown suite is rejected."""
        with pytest.raises(ValueError):
            Verifier().run("nope")

    def test_failing_case_is_recorded(self) -> None:
        """Test that a case raising a domain error is kept as an error and fails the run."""
        with (
            patch(
                "growthindex.core.verifier.get_suite",
                return_value={"duality": (SuiteCase(family="bogus"),)},
            ),
            patch(
                "growthindex.core.verifier.make_sequence",
                side_effect=DomainError("family", "bogus", "unknown family"),
            ),
        ):
            report = Verifier().run("duality")

        assert not report.passed
        assert report.records == []
        assert report.contradictions == []
        error = report.errors[0]
        assert (error.suite, error.family, error.error) == ("duality", "bogus", "DomainError")
        assert "unknown family" in error.message

    def test_failed_identity_is_a_contradiction(self) -> None:
        """Test that a failing asserted check is reported as a contradiction."""
        duality = Mock()
        duality.checks = [fails("mu_om_rho_m"), holds("alpha_om_nu")]
        duality.flags = [holds("mg_flag")]
        duality.srs = holds("srs")
        with (
            patch(
                "growthindex.core.verifier.get_suite",
                return_value={"duality": (SuiteCase(family="gevrey:alpha=1"),)},
            ),
            patch("growthindex.core.verifier.make_sequence"),
            patch("growthindex.core.verifier.duality_report", return_value=duality),
            patch("growthindex.core.verifier.associate"),
            patch(
                "growthindex.core.verifier.integral_relation_check",
                return_value=holds("integral_relation"),
            ),
        ):
            report = Verifier().run("duality")

        assert not report.passed
        assert [r.verdict.id for r in report.records] == [
            "mu_om_rho_m",
            "alpha_om_nu",
            "mg_flag",
            "srs",
            "integral_relation",
        ]
        assert len(report.contradictions) == 1
        contradiction = report.contradictions[0]
        assert contradiction.first == "mu_om_rho_m"
        assert contradiction.second == "expected to hold"
        assert contradiction.family == "gevrey:alpha=1"

    def test_report_passes_without_contradictions(self) -> None:
        """Test SuiteReport.passed on an empty report."""
        assert SuiteReport(suite="all").passed


class TestCounterexampleSuite:
    """Tests for the counterexample suite."""

    def test_small_hat_gamma_is_a_contradiction(self) -> None:
        """Test that gamma(omega_Mhat) below 20 contradicts the counterexample."""
        m = Mock()
        m.beta.value = 0.0
        m.mu.value = math.inf
        hat = inconclusive("hat_relation", "range too short", gamma_hat=3.0, gamma=math.inf)
        with (
            patch("growthindex.core.verifier.make_sequence"),
            patch("growthindex.core.verifier.seq_indices", return_value=m),
            patch("growthindex.core.verifier.associate"),
            patch("growthindex.core.verifier.alpha", return_value=Mock(value=0.0)),
            patch("growthindex.core.verifier.hat_relation_check", return_value=hat),
        ):
            report = Verifier().run("counterexample")

        assert [c.first for c in report.contradictions] == ["gamma_om_hat"]
        assert report.records[-1].verdict == hat

    @pytest.mark.slow
    def test_counterexample_at_default_settings(self) -> None:
        """Test that the counterexample suite passes with a large gamma(omega_Mhat)."""
        report = Verifier(EstimatorSettings()).run("counterexample")

        assert report.passed
        by_id = {r.verdict.id: r.verdict for r in report.records}
        assert by_id["gamma_om_hat"].holds
        assert float(by_id["gamma_om_hat"].witness["gamma_hat"]) >= 20


@pytest.mark.slow
class TestSequenceSuites:
    """Tests running the sequence suites at the default horizon."""

    @pytest.mark.parametrize("suite", ["alpha_seq", "beta_seq"])
    def test_every_case_runs_and_agrees(self, suite: str) -> None:
        """Test that every sequence case reports verdicts without contradictions."""
        report = Verifier(EstimatorSettings()).run(suite)
        assert report.errors == []
        assert report.contradictions == []
        assert {r.family for r in report.records} >= {"gevrey_seq:alpha=1", "m0_beta:beta=1"}
