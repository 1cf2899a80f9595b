"""Unit tests for family specification strings."""

import pytest

from growthindex.config.models import EstimatorSettings
from growthindex.core.errors import DomainError
from growthindex.generators.spec import (
    SUPPORTED_FAMILIES,
    FamilySpec,
    canonical_family,
    make,
    make_function,
    make_sequence,
)
from growthindex.weights.function import WeightFunction
from growthindex.weights.sequence import QuotientSequence, WeightSequence

SETTINGS = EstimatorSettings(pmax=64, xmax=1e6)


class TestFamilySpec:
    """Tests for parsing family specs."""

    def test_parse_with_parameters(self) -> None:
        """Test a spec with several parameters."""
        spec = FamilySpec.from_string("four_index:beta=1,mu=2,rho=3,alpha=4")
        assert spec.family == "four_index"
        assert spec.params == {"beta": 1.0, "mu": 2.0, "rho": 3.0, "alpha": 4.0}
        assert spec.kind == "sequence"

    def test_aliases(self) -> None:
        """Test that aliases resolve to canonical ids."""
        assert FamilySpec.from_string("gevrey:alpha=2").family == "gevrey_seq"
        assert canonical_family(" power ") == "power_fn"
        assert FamilySpec(family="logpow").family == "logpow_fn"

    def test_str_round_trip(self) -> None:
        """Test the string form of a spec."""
        assert str(FamilySpec.from_string("gevrey_fn: s = 0.5")) == "gevrey_fn:s=0.5"
        assert str(FamilySpec.from_string("counterexample")) == "counterexample"

    def test_unknown_family(self) -> None:
        """Test that an unknown family lists the supported ones."""
        with pytest.raises(DomainError, match="expected one of"):
            FamilySpec.from_string("bogus:a=1")

    def test_missing_parameter(self) -> None:
        """Test that required parameters are enforced."""
        with pytest.raises(DomainError, match="missing alpha"):
            FamilySpec.from_string("gevrey_seq")

    def test_unknown_parameter(self) -> None:
        """Test that unexpected parameters are rejected."""
        with pytest.raises(DomainError, match="unknown gamma"):
            FamilySpec.from_string("gevrey_seq:alpha=1,gamma=2")

    def test_malformed_parameter(self) -> None:
        """Test a parameter without a value."""
        with pytest.raises(DomainError, match="malformed parameter"):
            FamilySpec.from_string("gevrey_seq:alpha")

    def test_non_numeric_parameter(self) -> None:
        """Test that parameter values must be numbers."""
        with pytest.raises(DomainError, match="must be numbers"):
            FamilySpec.from_string("gevrey_seq:alpha=two")

    def test_supported_families_sorted(self) -> None:
        """Test that the supported list is sorted and contains both kinds."""
        assert sorted(SUPPORTED_FAMILIES) == SUPPORTED_FAMILIES
        assert {"gevrey_seq", "gevrey_fn", "proximate"} <= set(SUPPORTED_FAMILIES)


class TestMake:
    """Tests for building families from specs."""

    def test_make_sequence(self) -> None:
        """Test that settings set the horizon."""
        M = make_sequence("gevrey:alpha=1", SETTINGS)
        assert isinstance(M, WeightSequence)
        assert M.horizon == 64

    def test_make_quotient_family(self) -> None:
        """Test that quotient families come back from make as quotients."""
        assert isinstance(make("orv_rep", SETTINGS), QuotientSequence)
        M = make_sequence("orv_rep:d=0,xi=1", SETTINGS)
        assert isinstance(M, WeightSequence)
        assert M.horizon == 65

    def test_make_function(self) -> None:
        """Test building a function family with its ceiling from settings."""
        sigma = make_function(FamilySpec.from_string("power:s=2"), SETTINGS)
        assert isinstance(sigma, WeightFunction)
        assert sigma.ceiling == pytest.approx(1e6)

    def test_proximate_function(self) -> None:
        """Test that the proximate family yields its function."""
        assert make_function("proximate:rho=1", SETTINGS).name == "V(1,0)"

    def test_kind_mismatch(self) -> None:
        """Test that a family of the wrong kind is rejected."""
        with pytest.raises(DomainError, match="expected a function family"):
            make_function("gevrey:alpha=1", SETTINGS)
        with pytest.raises(DomainError, match="expected a sequence family"):
            make_sequence("power:s=1", SETTINGS)

    def test_family_parameter_errors_propagate(self) -> None:
        """Test that generator domain errors surface unchanged."""
        with pytest.raises(DomainError, match="0 < s <= 1"):
            make_function("gevrey_fn:s=2", SETTINGS)
