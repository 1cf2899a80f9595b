"""Unit tests for built-in verification suites."""

import pytest

from growthindex.config.models import SUITE_NAMES
from growthindex.config.presets import SUITES, get_available_suites, get_suite
from growthindex.generators.spec import FamilySpec


class TestGetSuite:
    """Tests for get_suite function."""

    @pytest.mark.parametrize("name", [n for n in SUITE_NAMES if n != "all"])
    def test_single_suite(self, name: str) -> None:
        """Test that a named suite returns only its own cases."""
        assert get_suite(name) == {name: SUITES[name]}

    def test_all_suites(self) -> None:
        """Test that all expands to every suite in a fixed order."""
        assert list(get_suite("all")) == [n for n in SUITE_NAMES if n != "all"]

    def test_unknown_suite(self) -> None:
        """Test that an unknown suite name raises ValueError."""
        with pytest.raises(ValueError, match="Unknown suite 'nope'"):
            get_suite("nope")

    def test_available_suites(self) -> None:
        """Test the list of available suites includes all."""
        assert get_available_suites() == list(SUITE_NAMES)


class TestSuiteContents:
    """Tests for the family matrix itself."""

    def test_every_family_parses(self) -> None:
        """Test that every case names a known family."""
        for cases in SUITES.values():
            for case in cases:
                FamilySpec.from_string(case.family)

    def test_battery_suites_have_parameters(self) -> None:
        """Test that battery suites test at least one parameter per family."""
        for name in ("alpha_fn", "beta_fn", "alpha_seq", "beta_seq"):
            assert all(case.parameters for case in SUITES[name])

    def test_duality_covers_six_families(self) -> None:
        """Test the duality suite runs six families."""
        assert len(SUITES["duality"]) == 6

    def test_parameters_away_from_index(self) -> None:
        """Test battery parameters keep distance 0.25 from finite expected indices."""
        for name in ("alpha_fn", "beta_fn", "alpha_seq", "beta_seq"):
            index = name.split("_")[0]
            for case in SUITES[name]:
                expected = case.expected.get(index)
                if expected is None or expected == float("inf"):
                    continue
                assert all(abs(p - expected) >= 0.25 for p in case.parameters), case.family
