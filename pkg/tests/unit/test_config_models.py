"""Unit tests for configuration models."""

import math

import pytest
from pydantic import ValidationError

from growthindex.config.models import SUITE_NAMES, EstimatorSettings, RunConfig, SuiteCase


class TestEstimatorSettings:
    """Tests for EstimatorSettings model."""

    def test_defaults(self) -> None:
        """Test the default numerical knobs."""
        settings = EstimatorSettings()
        assert settings.tolerance == 0.05
        assert settings.windows == 4
        assert settings.points_per_decade == 256
        assert settings.xmax == 1e12
        assert settings.pmax == 4096
        assert settings.quad_rel_tol == 1e-6

    def test_log_xmax(self) -> None:
        """Test that log_xmax is the natural log of xmax."""
        assert EstimatorSettings(xmax=1e6).log_xmax == pytest.approx(6 * math.log(10))

    def test_alias_and_name(self) -> None:
        """Test both kebab-case aliases and field names are accepted."""
        by_alias = EstimatorSettings.model_validate({"points-per-decade": 64})
        by_name = EstimatorSettings(points_per_decade=64)
        assert by_alias.points_per_decade == by_name.points_per_decade == 64

    @pytest.mark.parametrize("tolerance", [0.0, 0.5, -0.1, 1.0])
    def test_tolerance_range(self, tolerance: float) -> None:
        """Test that tolerance must lie strictly between 0 and 0.5."""
        with pytest.raises(ValidationError, match="tolerance must lie in"):
            EstimatorSettings(tolerance=tolerance)

    def test_small_xmax(self) -> None:
        """Test that the evaluation ceiling must be at least 1e3."""
        with pytest.raises(ValidationError, match="xmax must be at least 1e3"):
            EstimatorSettings(xmax=100.0)

    def test_small_pmax(self) -> None:
        """Test that the horizon must be at least 16."""
        with pytest.raises(ValidationError, match="pmax must be at least 16"):
            EstimatorSettings(pmax=8)

    def test_few_windows(self) -> None:
        """Test that trend rules need three windows."""
        with pytest.raises(ValidationError, match="windows must be at least 3"):
            EstimatorSettings(windows=2)

    def test_theta_range(self) -> None:
        """Test that theta must lie in (0, 1)."""
        with pytest.raises(ValidationError, match="theta must lie in"):
            EstimatorSettings(theta=1.0)

    def test_frozen(self) -> None:
        """Test that settings cannot be modified after construction."""
        settings = EstimatorSettings()
        with pytest.raises(ValidationError):
            settings.pmax = 64  # type: ignore[misc]


class TestRunConfig:
    """Tests for RunConfig model."""

    def test_defaults(self) -> None:
        """Test the default run selection."""
        config = RunConfig()
        assert config.suite == "all"
        assert config.family == ""
        assert config.settings == EstimatorSettings()

    @pytest.mark.parametrize("suite", SUITE_NAMES)
    def test_known_suites(self, suite: str) -> None:
        """Test every known suite is accepted."""
        assert RunConfig(suite=suite).suite == suite

    def test_unknown_suite(self) -> None:
        """Test that an unknown suite is rejected."""
        with pytest.raises(ValidationError, match="unknown suite"):
            RunConfig(suite="gamma")

    def test_null_settings(self) -> None:
        """Test that an empty settings block gives defaults."""
        assert RunConfig.model_validate({"settings": None}).settings.pmax == 4096

    def test_nested_settings(self) -> None:
        """Test settings are validated from a nested mapping."""
        config = RunConfig.model_validate({"settings": {"pmax": "64", "xmax": "1e6"}})
        assert config.settings.pmax == 64
        assert config.settings.xmax == 1e6


class TestSuiteCase:
    """Tests for SuiteCase model."""

    def test_defaults(self) -> None:
        """Test a case with only a family."""
        case = SuiteCase(family="counterexample")
        assert case.parameters == ()
        assert case.expected == {}

    def test_infinite_expectation(self) -> None:
        """Test that an infinite expected index is allowed."""
        case = SuiteCase(family="mq:q=2", expected={"alpha": math.inf})
        assert math.isinf(case.expected["alpha"])
