"""Unit tests for proximate orders."""

import math

import numpy as np
import pytest

from growthindex.core.errors import DomainError
from growthindex.generators.proximate import FREEZE_AT, constant_order, proximate_family


class TestProximateFamily:
    """Tests for rho(t) = rho + b log log t / log t."""

    def test_function_values(self) -> None:
        """Test V(t) = t^rho (log t)^b beyond e^2."""
        order, sigma = proximate_family(1.0, 1.0)
        t = math.e**3
        assert sigma(t) == pytest.approx(t * 3.0)
        assert order.limit == 1.0
        assert order.log_V(t) == pytest.approx(3.0 + math.log(3.0))

    def test_frozen_below_e_squared(self) -> None:
        """Test the frozen exponent and vanishing derivative below e^2."""
        order, _ = proximate_family(1.0, 2.0)
        t = np.array([2.0, 5.0])
        np.testing.assert_allclose(order.value(t), 1.0 + 2.0 * math.log(2.0) / 2.0)
        np.testing.assert_array_equal(order.derivative(t), [0.0, 0.0])
        assert order.start == FREEZE_AT

    def test_condition_d_decays(self) -> None:
        """Test that t rho'(t) log t shrinks towards 0."""
        order, _ = proximate_family(1.0, 1.0)
        near, far = np.abs(order.condition_d(np.array([1e10, 1e100])))
        assert far < near

    @pytest.mark.parametrize(("rho", "b"), [(-1.0, 0.0), (0.0, 0.0), (1.0, -2.0)])
    def test_invalid(self, rho: float, b: float) -> None:
        """Test that V must be nondecreasing and unbounded."""
        with pytest.raises(DomainError):
            proximate_family(rho, b)


class TestConstantOrder:
    """Tests for constant_order."""

    def test_constant(self) -> None:
        """Test rho(t) = rho with zero derivative."""
        order = constant_order(2.0)
        assert order.log_V(math.e) == pytest.approx(2.0)
        np.testing.assert_array_equal(order.condition_d(np.array([10.0, 100.0])), [0.0, 0.0])
