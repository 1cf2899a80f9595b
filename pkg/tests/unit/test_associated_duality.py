"""Unit tests for the sequence/associated-function duality checks."""

import math

import pytest

from growthindex.associated.duality import (
    duality_report,
    equal_verdict,
    reciprocal_verdict,
)
from growthindex.config.models import EstimatorSettings
from growthindex.generators.families import gevrey_seq, m_alpha_beta
from growthindex.generators.four_index import four_index_sequence

SETTINGS = EstimatorSettings(pmax=1024, xmax=1e8)


class TestReciprocalVerdict:
    """Tests for reciprocal_verdict."""

    def test_finite(self) -> None:
        """Test 2 * 0.5 = 1."""
        assert reciprocal_verdict("r", 2.0, 0.5, 0.1).holds
        assert reciprocal_verdict("r", 2.0, 2.0, 0.1).fails

    def test_infinite_pairs_with_zero(self) -> None:
        """Test that inf pairs with values near zero."""
        assert reciprocal_verdict("r", math.inf, 0.01, 0.1).holds
        assert reciprocal_verdict("r", 0.5, math.inf, 0.1).fails

    def test_zero_needs_large_partner(self) -> None:
        """Test that 0 pairs only with values of at least 1/tolerance."""
        assert reciprocal_verdict("r", 0.0, 20.0, 0.1).holds
        assert reciprocal_verdict("r", 0.0, 2.0, 0.1).fails

    def test_nan(self) -> None:
        """Test that nan gives an inconclusive verdict."""
        assert not reciprocal_verdict("r", math.nan, 1.0, 0.1).definite


class TestEqualVerdict:
    """Tests for equal_verdict."""

    def test_within_tolerance(self) -> None:
        """Test closeness within the tolerance."""
        assert equal_verdict("e", 1.0, 1.05, 0.1).holds
        assert equal_verdict("e", 1.0, 1.5, 0.1).fails

    def test_infinities(self) -> None:
        """Test that infinities must match in sign."""
        assert equal_verdict("e", math.inf, math.inf, 0.1).holds
        assert equal_verdict("e", math.inf, 1e9, 0.1).fails

    def test_nan(self) -> None:
        """Test that nan gives an inconclusive verdict."""
        assert not equal_verdict("e", 1.0, math.nan, 0.1).definite


@pytest.mark.slow
class TestDualityReport:
    """Tests for the full duality report."""

    def test_factorial(self) -> None:
        """Test that p! is strongly regular with every index close to 1."""
        report = duality_report(gevrey_seq(1.0, SETTINGS.pmax, SETTINGS.xmax), SETTINGS)
        assert report.name == "gevrey(1)"
        for value in (report.beta_m, report.alpha_m, report.alpha_nu, report.alpha_om):
            assert value == pytest.approx(1.0, abs=0.1)
        assert report.ratio_liminf == pytest.approx(1.0, abs=0.1)
        assert report.srs.holds
        assert report.consistent
        assert report.check("beta_m_alpha_nu").holds
        assert report.check("mu_om_rho_m").id == "mu_om_rho_m"

    def test_missing_check(self) -> None:
        """Test that an unknown identity raises KeyError."""
        report = duality_report(gevrey_seq(2.0, SETTINGS.pmax, SETTINGS.xmax), SETTINGS)
        with pytest.raises(KeyError):
            report.check("no_such_identity")

    def test_default_horizon(self) -> None:
        """Test that p! is analysed at the default pmax and xmax without horizon errors."""
        report = duality_report(gevrey_seq(1.0), EstimatorSettings())
        assert report.consistent
        assert report.alpha_om == pytest.approx(1.0, abs=0.1)


@pytest.mark.slow
class TestDualityProducts:
    """Tests for the reciprocal identities at the default horizon."""

    def test_four_index_counting_function(self) -> None:
        """Test alpha(nu_m) = 1/beta(m) and gamma(omega_M) = gamma(M) for indices 1, 2, 3, 4."""
        report = duality_report(four_index_sequence(1.0, 2.0, 3.0, 4.0), EstimatorSettings())
        assert report.beta_m == pytest.approx(1.0, abs=0.05)
        assert report.alpha_nu * report.beta_m == pytest.approx(1.0, abs=0.1)
        assert report.alpha_om == pytest.approx(report.beta_m, abs=0.1)
        assert report.check("beta_m_alpha_nu").holds
        assert report.consistent

    def test_log_corrected_factorial(self) -> None:
        """Test that a log correction keeps the indices of omega_M finite."""
        report = duality_report(m_alpha_beta(1.0, 1.0), EstimatorSettings())
        assert math.isfinite(report.beta_om)
        assert math.isfinite(report.rho_om)
        assert report.rho_om * report.mu_m == pytest.approx(1.0, abs=0.1)
        assert report.check("beta_nu_beta_om").holds
        assert report.consistent

    def test_four_index_orders(self) -> None:
        """Test rho(omega_M) mu(m) = 1 for indices 2, 2.5, 3, 3.5."""
        report = duality_report(four_index_sequence(2.0, 2.5, 3.0, 3.5), EstimatorSettings())
        assert report.mu_m == pytest.approx(2.5, abs=0.05)
        assert report.rho_om * report.mu_m == pytest.approx(1.0, abs=0.1)
        assert report.check("rho_om_mu_m").holds
