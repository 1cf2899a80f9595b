"""Unit tests for the block counterexample sequence."""

import numpy as np
import pytest

from growthindex.core.errors import DomainError
from growthindex.generators.counterexample import (
    block_ratio_witnesses,
    counterexample_blocks,
    counterexample_L,
    counterexample_log_M,
    counterexample_log_m,
    counterexample_sequence,
    upper_block_bound,
)


class TestBlocks:
    """Tests for the exact block data."""

    def test_first_blocks(self) -> None:
        """Test (a_j, b_j, c_j) for j = 1, 2, 3."""
        assert counterexample_blocks(3) == [(1, 2, 16), (4, 8, 256), (64, 128, 65536)]

    def test_needs_a_block(self) -> None:
        """Test that j_max must be positive."""
        with pytest.raises(DomainError, match="at least one block"):
            counterexample_blocks(0)

    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_upper_block_bound(self, j: int) -> None:
        """Test 2 L_{b_j} >= c_j >= L_{a_j}."""
        assert upper_block_bound(j)


class TestLogValues:
    """Tests for the closed-form log quotients and partial products."""

    def test_log_m(self) -> None:
        """Test ramps inside blocks and flat stretches between them."""
        p = np.array([0.0, 1.0, 2.0, 3.0, 5.0, 8.0])
        np.testing.assert_array_equal(
            counterexample_log_m(p), [0.0, 0.0, 16.0, 16.0, 272.0, 1040.0]
        )

    def test_log_M_is_partial_sum(self) -> None:
        """Test that log M_n sums log m_q over q < n exactly."""
        n = np.arange(0.0, 200.0)
        log_M = counterexample_log_M(n, top=200.0)
        log_m = counterexample_log_m(n[:-1], top=200.0)
        np.testing.assert_array_equal(np.diff(log_M), log_m)
        assert log_M[6] == 320.0


class TestSequence:
    """Tests for the assembled weight sequence."""

    def test_build(self) -> None:
        """Test the horizon, the table and the recorded blocks."""
        M = counterexample_sequence(256, 1e6)
        assert M.name == "counterexample"
        assert M.horizon == 256
        assert M.log_M[3] == 16.0
        assert len(M.metadata["blocks"]) == 4

    def test_minimum_horizon(self) -> None:
        """Test that the construction needs pmax >= 128."""
        with pytest.raises(DomainError, match="pmax >= 128"):
            counterexample_sequence(64)

    def test_L(self) -> None:
        """Test L_p = log m_p / p."""
        L = counterexample_L(counterexample_sequence(256, 1e6), P=8)
        assert L[1] == pytest.approx(8.0)
        assert L[7] == pytest.approx(130.0)

    def test_flat_stretch_witnesses(self) -> None:
        """Test that m_{k b_j} = m_{b_j} on the stretch after block 2."""
        witnesses = block_ratio_witnesses(counterexample_sequence(256, 1e6))
        assert [(w["j"], w["k"]) for w in witnesses] == [(2, 2), (2, 3), (2, 4)]
        assert all(w["log_ratio"] == 0.0 for w in witnesses)
