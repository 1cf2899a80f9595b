"""Unit tests for CSV readers of sequences and functions."""

import math
from pathlib import Path

import numpy as np
import pytest

from growthindex.core.errors import InputFormatError
from growthindex.weights.readers import read_function_csv, read_sequence_csv


def write_rows(path: Path, header: str, rows: list[tuple[float, float]]) -> Path:
    lines = [header] + [f"{a!r},{b!r}" for a, b in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def gevrey_rows(count: int = 20) -> list[tuple[float, float]]:
    return [(float(p), math.log(p + 1.0)) for p in range(count)]


class TestReadSequence:
    """Tests for read_sequence_csv."""

    def test_read_log_m(self, tmp_path: Path) -> None:
        """Test reading quotients and building M by telescoping."""
        M = read_sequence_csv(write_rows(tmp_path / "fact.csv", "p,log_m", gevrey_rows()))
        assert M.name == "fact"
        assert M.horizon == 20
        assert M.log_M[-1] == pytest.approx(math.lgamma(21.0))

    def test_read_log_big_m(self, tmp_path: Path) -> None:
        """Test reading log M directly."""
        rows = [(float(p), math.lgamma(p + 1.0)) for p in range(20)]
        M = read_sequence_csv(write_rows(tmp_path / "fact.csv", "p,log_M", rows))
        assert M.horizon == 19
        np.testing.assert_allclose(M.quotients_table(), np.log(np.arange(1, 20)))

    def test_gap_in_p(self, tmp_path: Path) -> None:
        """Test that a gap in p names the expected index and the line."""
        rows = gevrey_rows()
        del rows[5]
        path = write_rows(tmp_path / "bad.csv", "p,log_m", rows)
        with pytest.raises(InputFormatError, match="expected 5, got 6") as excinfo:
            read_sequence_csv(path)
        assert excinfo.value.line == 7

    def test_bad_header(self, tmp_path: Path) -> None:
        """Test that a wrong header is reported on line 1."""
        path = write_rows(tmp_path / "bad.csv", "n,value", gevrey_rows())
        with pytest.raises(InputFormatError, match="header must be") as excinfo:
            read_sequence_csv(path)
        assert excinfo.value.line == 1

    def test_not_a_number(self, tmp_path: Path) -> None:
        """Test that a non-numeric cell is rejected."""
        path = tmp_path / "bad.csv"
        path.write_text("p,log_m\n0,0.0\n1,abc\n", encoding="utf-8")
        with pytest.raises(InputFormatError, match="not a number"):
            read_sequence_csv(path)

    def test_non_finite(self, tmp_path: Path) -> None:
        """Test that infinite values are rejected."""
        path = tmp_path / "bad.csv"
        path.write_text("p,log_m\n0,0.0\n1,inf\n", encoding="utf-8")
        with pytest.raises(InputFormatError, match="finite"):
            read_sequence_csv(path)

    def test_three_columns(self, tmp_path: Path) -> None:
        """Test that extra columns are rejected."""
        path = tmp_path / "bad.csv"
        path.write_text("p,log_m\n0,0.0,1\n1,0.5\n", encoding="utf-8")
        with pytest.raises(InputFormatError, match="two columns"):
            read_sequence_csv(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that a missing file is an input error."""
        with pytest.raises(InputFormatError, match="file not found"):
            read_sequence_csv(tmp_path / "missing.csv")

    def test_too_short_for_a_weight_sequence(self, tmp_path: Path) -> None:
        """Test that construction errors surface as input errors."""
        path = write_rows(tmp_path / "short.csv", "p,log_m", gevrey_rows(4))
        with pytest.raises(InputFormatError, match="below the minimum"):
            read_sequence_csv(path)

    def test_blank_lines_skipped(self, tmp_path: Path) -> None:
        """Test that blank lines are ignored."""
        path = write_rows(tmp_path / "fact.csv", "p,log_m", gevrey_rows())
        path.write_text(path.read_text(encoding="utf-8") + "\n\n", encoding="utf-8")
        assert read_sequence_csv(path).horizon == 20


class TestReadFunction:
    """Tests for read_function_csv."""

    def test_read_samples(self, tmp_path: Path) -> None:
        """Test reading a sampled weight function."""
        rows = [(float(t), math.sqrt(t)) for t in (0, 1, 4, 9, 16, 100)]
        sigma = read_function_csv(write_rows(tmp_path / "sqrt.csv", "t,sigma", rows))
        assert sigma.name == "sqrt"
        assert sigma(9.0) == pytest.approx(3.0)

    def test_not_increasing(self, tmp_path: Path) -> None:
        """Test that t must be strictly increasing, naming the line."""
        rows = [(0.0, 0.0), (2.0, 1.0), (1.0, 2.0)]
        path = write_rows(tmp_path / "bad.csv", "t,sigma", rows)
        with pytest.raises(InputFormatError, match="strictly increasing") as excinfo:
            read_function_csv(path)
        assert excinfo.value.line == 4

    def test_negative_sigma(self, tmp_path: Path) -> None:
        """Test that negative values are rejected."""
        rows = [(0.0, -1.0), (1.0, 1.0), (2.0, 2.0)]
        path = write_rows(tmp_path / "bad.csv", "t,sigma", rows)
        with pytest.raises(InputFormatError, match="nonnegative"):
            read_function_csv(path)
