"""Unit tests for the command-line interface."""

import json
from pathlib import Path
from unittest.mock import patch

import pytest
from typer.testing import CliRunner

from growthindex.cli.app import EXIT_INPUT, EXIT_VERIFICATION, app
from growthindex.core.errors import VerificationError
from growthindex.core.verifier import CaseError, SuiteReport

runner = CliRunner()


class TestVerifyCommand:
    """Tests for the verify command."""

    def test_help(self) -> None:
        """Test that the top-level help lists the commands."""
        result = runner.invoke(app, ["--help"])
        assert result.exit_code == 0
        for command in ("analyze-seq", "analyze-fn", "verify"):
            assert command in result.output

    def test_unknown_suite(self) -> None:
        """Test that an unknown suite exits with the input error code."""
        result = runner.invoke(app, ["verify", "--suite", "nope"])
        assert result.exit_code == EXIT_INPUT
        assert "Unknown suite 'nope'" in result.output

    def test_flags_reach_the_run_config(self) -> None:
        """Test that suite and estimator flags override the defaults."""
        with patch("growthindex.cli.app.run_verify") as mock_run:
            result = runner.invoke(
                app, ["verify", "--suite", "duality", "--pmax", "64", "--tol", "0.1"]
            )

        assert result.exit_code == 0
        config = mock_run.call_args.args[0]
        assert config.command == "verify"
        assert config.suite == "duality"
        assert config.settings.pmax == 64
        assert config.settings.tolerance == 0.1

    def test_contradiction_exits_one(self) -> None:
        """Test that a contradiction exits with the verification code."""
        with patch(
            "growthindex.cli.app.run_verify",
            side_effect=VerificationError("mu_om_rho_m", "expected to hold"),
        ):
            result = runner.invoke(app, ["verify", "--suite", "duality"])

        assert result.exit_code == EXIT_VERIFICATION
        assert "mu_om_rho_m" in result.output

    def test_case_error_exits_one(self, tmp_path: Path) -> None:
        """Test that a case that raised fails the run after the report is written."""
        report = SuiteReport(
            suite="duality",
            errors=[
                CaseError(
                    suite="duality",
                    family="four_index",
                    error="DomainError",
                    message="s=0 is invalid",
                )
            ],
        )
        out = tmp_path / "verify.json"
        with patch("growthindex.cli.commands.verify.Verifier") as mock_verifier:
            mock_verifier.return_value.run.return_value = report
            result = runner.invoke(app, ["verify", "--suite", "duality", "--out", str(out)])

        assert result.exit_code == EXIT_VERIFICATION
        assert "Case error in duality/four_index" in result.output
        assert "1 case(s) could not be checked" in result.output
        written = json.loads(out.read_text())
        assert written["passed"] is False
        assert written["errors"][0]["family"] == "four_index"

    @pytest.mark.slow
    def test_every_suite_passes_at_default_settings(self, tmp_path: Path) -> None:
        """Test that the full verification run exits cleanly at the default horizon."""
        out = tmp_path / "verify.json"
        result = runner.invoke(app, ["verify", "--suite", "all", "--out", str(out)])

        assert result.exit_code == 0, result.output
        written = json.loads(out.read_text())
        assert written["passed"] is True
        assert written["contradictions"] == []
        assert written["errors"] == []

    def test_missing_config_file(self, tmp_path: Path) -> None:
        """Test that a missing configuration file is an input error."""
        result = runner.invoke(app, ["verify", "--config", str(tmp_path / "missing.yaml")])
        assert result.exit_code == EXIT_INPUT
        assert "not found" in result.output


class TestAnalyzeCommands:
    """Tests for analyze-seq and analyze-fn."""

    def test_family_argument(self) -> None:
        """Test that the positional family lands in the run config."""
        with patch("growthindex.cli.app.run_analyze_seq") as mock_run:
            result = runner.invoke(app, ["analyze-seq", "gevrey:alpha=2", "--pmax", "128"])

        assert result.exit_code == 0
        config = mock_run.call_args.args[0]
        assert config.family == "gevrey:alpha=2"
        assert config.settings.pmax == 128

    def test_conflicting_families(self) -> None:
        """Test that two different family specs are rejected."""
        result = runner.invoke(
            app, ["analyze-fn", "gevrey_fn:s=0.5", "--family", "power_fn:s=2"]
        )
        assert result.exit_code == EXIT_INPUT
        assert "either as an argument or with --family" in result.output

    def test_family_and_input(self, tmp_path: Path) -> None:
        """Test that a family spec and an input file are mutually exclusive."""
        csv = tmp_path / "m.csv"
        csv.write_text("p,log_m\n0,0\n1,0.5\n")
        result = runner.invoke(app, ["analyze-seq", "gevrey:alpha=1", "--input", str(csv)])
        assert result.exit_code == EXIT_INPUT
        assert "exactly one" in result.output

    def test_malformed_csv(self, tmp_path: Path) -> None:
        """Test that a gap in the p column is an input error."""
        csv = tmp_path / "m.csv"
        csv.write_text("p,log_m\n0,0\n1,0.5\n3,1\n")
        result = runner.invoke(app, ["analyze-seq", "--input", str(csv)])
        assert result.exit_code == EXIT_INPUT
        assert "contiguous" in result.output

    def test_unknown_family(self) -> None:
        """Test that an unknown family is an input error."""
        result = runner.invoke(app, ["analyze-fn", "nosuch_fn:s=1"])
        assert result.exit_code == EXIT_INPUT
        assert "Error:" in result.output
