"""Unit tests for proximate order admission."""

import numpy as np
import pytest

from growthindex.associated.proximate import check_nonnegative, proximate_order_check
from growthindex.config.models import EstimatorSettings
from growthindex.generators.families import power_fn
from growthindex.generators.proximate import ProximateOrder, constant_order

SETTINGS = EstimatorSettings(xmax=1e8)


class TestProximateOrderCheck:
    """Tests for proximate_order_check."""

    def test_constant_order_admitted(self) -> None:
        """Test that t admits the constant order 1."""
        verdict = proximate_order_check(constant_order(1.0), power_fn(1.0, 1e8), SETTINGS)
        assert verdict.holds
        assert verdict.witness["indices"]["alpha"] == pytest.approx(1.0)

    def test_wrong_order_rejected(self) -> None:
        """Test that t does not admit the constant order 2."""
        verdict = proximate_order_check(constant_order(2.0), power_fn(1.0, 1e8), SETTINGS)
        assert verdict.fails
        assert verdict.witness["prox_admission"] == "fails"


class TestNonnegative:
    """Tests for check_nonnegative."""

    def test_negative_order(self) -> None:
        """Test that a negative rho(t) is reported with its location."""
        order = ProximateOrder(
            value=lambda t: np.full(np.shape(t), -1.0),
            derivative=lambda t: np.zeros(np.shape(t)),
            start=1.0,
            limit=-1.0,
        )
        verdict = check_nonnegative(order, 0.0, 1.0)
        assert verdict.fails
        assert verdict.witness["value"] == -1.0

    def test_constant(self) -> None:
        """Test that a constant nonnegative order passes."""
        assert check_nonnegative(constant_order(0.5), 0.0, 5.0).holds
