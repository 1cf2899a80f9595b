"""Unit tests for the four-index construction."""

import math

import numpy as np
import pytest

from growthindex.core.errors import DomainError
from growthindex.generators.four_index import (
    four_index_parameters,
    four_index_sequence,
    log_omega_blocks,
    orders_from_blocks,
)


class TestParameters:
    """Tests for the block exponents."""

    def test_parameters(self) -> None:
        """Test a and b for the indices 1 < 2 < 3 < 4."""
        assert four_index_parameters(1.0, 2.0, 3.0, 4.0) == pytest.approx((4.0, 2.0))

    def test_orders_recovered(self) -> None:
        """Test that the block exponents reproduce mu and rho."""
        a, b = four_index_parameters(0.5, 1.0, 2.5, 3.0)
        assert orders_from_blocks(a, b, 0.5, 3.0) == pytest.approx((1.0, 2.5))

    @pytest.mark.parametrize(
        "indices", [(2.0, 1.0, 3.0, 4.0), (0.0, 1.0, 2.0, 3.0), (1.0, 2.0, 3.0, math.inf)]
    )
    def test_order_required(self, indices: tuple[float, float, float, float]) -> None:
        """Test that 0 < beta < mu < rho < alpha < inf is enforced."""
        with pytest.raises(DomainError, match="0 < beta < mu < rho < alpha"):
            four_index_parameters(*indices)


class TestBlocks:
    """Tests for log omega."""

    def test_first_octave(self) -> None:
        """Test that omega(x) = x^mu on [1, 2]."""
        x = np.array([1.0, math.sqrt(2.0), 2.0])
        np.testing.assert_allclose(
            log_omega_blocks(x, 1.0, 2.0, 4.0, 4.0, 2.0), 2.0 * np.log(x)
        )

    def test_alpha_block(self) -> None:
        """Test the slope alpha on the first block [2, 2^b)."""
        value = log_omega_blocks(np.array([4.0]), 1.0, 2.0, 4.0, 4.0, 2.0)[0]
        assert value == pytest.approx(math.log(2.0) * (2.0 + 4.0))


class TestSequence:
    """Tests for the assembled sequence."""

    def test_build(self) -> None:
        """Test the name, the block metadata and the frozen first quotients."""
        M = four_index_sequence(1.0, 2.0, 3.0, 4.0, pmax=64, xmax=1e6)
        assert M.name == "four_index(1,2,3,4)"
        assert M.metadata["a"] == pytest.approx(4.0)
        log_m = M.quotients_table()
        assert log_m[0] == log_m[1] == log_m[2]
        assert np.all(np.diff(log_m) >= 0)

    def test_short_horizon(self) -> None:
        """Test that short horizons are rejected."""
        with pytest.raises(DomainError, match="at least 16"):
            four_index_sequence(1.0, 2.0, 3.0, 4.0, pmax=8)
