"""Unit tests for the (om) growth conditions of weight functions."""

import math

import pytest

from growthindex.config.models import EstimatorSettings
from growthindex.core.errors import DomainError
from growthindex.generators.families import gevrey_fn, logpow_fn, power_fn
from growthindex.weights.function import closed_form, from_samples
from growthindex.weights.function_conditions import (
    OMEGA_CONDITIONS,
    check_all,
    check_om1,
    check_om2,
    check_om4,
    check_om5,
    check_om6,
    check_omega,
    equivalent,
)

SETTINGS = EstimatorSettings()


class TestGrowthConditions:
    """Tests for (om1), (om2), (om5) and (om6) on closed forms."""

    def test_sqrt_doubling(self) -> None:
        """Test that sqrt satisfies sigma(2t) = O(sigma(t))."""
        assert check_om1(gevrey_fn(0.5), SETTINGS).holds

    def test_sqrt_is_o_of_t(self) -> None:
        """Test that sqrt is O(t) and o(t)."""
        sigma = gevrey_fn(0.5)
        assert check_om2(sigma, SETTINGS).holds
        assert check_om5(sigma, SETTINGS).holds

    def test_square_is_not_o_of_t(self) -> None:
        """Test that t^2 is not o(t) and carries a witness argument."""
        verdict = check_om5(power_fn(2.0), SETTINGS)
        assert verdict.fails
        assert verdict.witness["t"] > 1.0

    def test_sqrt_om6(self) -> None:
        """Test that sqrt doubles under a dilation by 8."""
        verdict = check_om6(gevrey_fn(0.5), SETTINGS)
        assert verdict.holds
        assert verdict.witness["H"] == 8

    def test_log_square_fails_om6(self) -> None:
        """Test that a slowly varying weight fails (om6)."""
        assert check_om6(logpow_fn(2.0), SETTINGS).fails


class TestConvexity:
    """Tests for the (om4) midpoint convexity check."""

    def test_power_is_convex_in_log(self) -> None:
        """Test that t^s is convex in log t."""
        assert check_om4(gevrey_fn(0.25), SETTINGS).holds

    def test_log_square_is_convex_in_log(self) -> None:
        """Test that max(0, log^2 t) is convex in log t."""
        assert check_om4(logpow_fn(2.0), SETTINGS).holds

    def test_kink_is_not_convex(self) -> None:
        """Test that a sharp drop in slope breaks convexity."""
        sigma = from_samples([1.0, 2.0, 3.0, 1e3], [0.0, 10.0, 10.5, 11.0], name="kink")
        verdict = check_om4(sigma, SETTINGS)
        assert verdict.fails
        assert verdict.witness["t"] == pytest.approx(2.0, rel=0.05)


class TestCheckOmega:
    """Tests for check_omega and check_all."""

    def test_unknown_condition(self) -> None:
        """Test that an unknown condition is a domain error."""
        with pytest.raises(DomainError, match="expected one of"):
            check_omega(gevrey_fn(0.5), "om8", SETTINGS)

    def test_dispatch(self) -> None:
        """Test that check_omega routes to the named check."""
        assert check_omega(gevrey_fn(0.5), "om1", SETTINGS).id == "om1"

    @pytest.mark.slow
    def test_check_all_order(self) -> None:
        """Test that check_all reports every condition in a fixed order."""
        verdicts = check_all(gevrey_fn(0.5), SETTINGS)
        assert [v.id for v in verdicts] == list(OMEGA_CONDITIONS)


class TestEquivalent:
    """Tests for sigma ~ tau."""

    def test_constant_multiple(self) -> None:
        """Test that sqrt and 2 sqrt are equivalent."""
        twice = closed_form("2sqrt", lambda s: 0.5 * s + math.log(2.0))
        verdict = equivalent(gevrey_fn(0.5), twice, SETTINGS)
        assert verdict.holds
        assert verdict.witness["C"] >= 1.0

    def test_different_powers(self) -> None:
        """Test that t^0.5 and t^0.6 are not equivalent."""
        assert equivalent(gevrey_fn(0.5), gevrey_fn(0.6), SETTINGS).fails
