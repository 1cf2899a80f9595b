"""Unit tests for evaluable functions, weight functions and transforms."""

import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from growthindex.core.errors import ConstructionError, DomainError, HorizonError
from growthindex.weights.function import (
    EvaluableFunction,
    WeightFunction,
    closed_form,
    from_samples,
    iota,
    mul_monomial,
    power_arg,
    power_val,
    step_embedding,
    step_function,
    transform,
)
from growthindex.weights.sequence import QuotientSequence


def sqrt_weight() -> WeightFunction:
    return closed_form("sqrt", lambda s: 0.5 * s)


def quotient_table(values: list[float]) -> QuotientSequence:
    return QuotientSequence(log_m=np.log(np.array(values)), name="a")


class TestWeightFunction:
    """Tests for WeightFunction validation and evaluation."""

    def test_evaluate(self) -> None:
        """Test evaluating sqrt at a few points."""
        sigma = sqrt_weight()
        assert sigma(4.0) == pytest.approx(2.0)
        assert sigma(0.0) == 0.0
        np.testing.assert_allclose(sigma(np.array([1.0, 9.0])), [1.0, 3.0])

    def test_beyond_ceiling(self) -> None:
        """Test that arguments past the ceiling raise HorizonError."""
        with pytest.raises(HorizonError):
            sqrt_weight().log_at(1e13)

    def test_decreasing_rejected(self) -> None:
        """Test that a decreasing profile is not a weight function."""
        with pytest.raises(ConstructionError, match="not nondecreasing"):
            closed_form("decreasing", lambda s: -s)

    def test_bounded_rejected(self) -> None:
        """Test that a constant profile does not grow."""
        with pytest.raises(ConstructionError, match="does not grow"):
            closed_form("constant", np.zeros_like)

    def test_empty_range_rejected(self) -> None:
        """Test that the trusted range must be nonempty."""
        with pytest.raises(ConstructionError, match="empty trusted range"):
            EvaluableFunction(log_profile=lambda s: s, log_ceiling=0.0, log_floor=1.0)

    def test_restricted(self) -> None:
        """Test that restriction lowers the ceiling only."""
        sigma = sqrt_weight()
        assert sigma.restricted(5.0).log_ceiling == 5.0
        assert sigma.restricted(1e9).log_ceiling == sigma.log_ceiling


class TestFromSamples:
    """Tests for from_samples."""

    def test_interpolation(self) -> None:
        """Test linear interpolation between samples."""
        sigma = from_samples([0.0, 1.0, 2.0, 4.0], [0.0, 0.0, 1.0, 3.0], name="table")
        assert sigma(3.0) == pytest.approx(2.0)
        assert sigma.threshold == 2.0
        assert sigma.log_ceiling == pytest.approx(math.log(4.0))
        assert sigma.normalized

    def test_not_increasing(self) -> None:
        """Test that t must be strictly increasing."""
        with pytest.raises(ConstructionError, match="strictly increasing"):
            from_samples([1.0, 1.0, 2.0], [0.0, 1.0, 2.0])

    def test_negative_values(self) -> None:
        """Test that negative sigma values are rejected."""
        with pytest.raises(ConstructionError, match="nonnegative"):
            from_samples([1.0, 2.0, 3.0], [-1.0, 1.0, 2.0])

    def test_mismatched_columns(self) -> None:
        """Test that t and sigma must have the same length."""
        with pytest.raises(ConstructionError, match="matching"):
            from_samples([1.0, 2.0, 3.0], [1.0, 2.0])


class TestStepEmbedding:
    """Tests for step_embedding and step_function."""

    def test_unshifted(self) -> None:
        """Test f(x) = a_{floor(x)-1} with a_0 on [0, 1)."""
        f = step_embedding(quotient_table([1.0, 2.0, 3.0, 4.0]))
        assert f(2.5) == pytest.approx(2.0)
        assert f(0.5) == pytest.approx(1.0)
        assert f.is_step
        assert f.log_ceiling == pytest.approx(math.log(4.0))

    def test_shifted(self) -> None:
        """Test f(x) = a_{floor(x)}."""
        f = step_embedding(quotient_table([1.0, 2.0, 3.0, 4.0]), shifted=True)
        assert f(2.5) == pytest.approx(3.0)

    def test_step_function_needs_monotone(self) -> None:
        """Test that a decreasing sequence is not a weight step function."""
        with pytest.raises(ConstructionError, match="decreases at p=2"):
            step_function(quotient_table([1.0, 3.0, 2.0]))

    def test_step_function(self) -> None:
        """Test a nondecreasing sequence embeds as a weight function."""
        assert isinstance(step_function(quotient_table([1.0, 2.0, 4.0, 8.0])), WeightFunction)


class TestTransforms:
    """Tests for the elementary transforms."""

    def test_iota(self) -> None:
        """Test f^iota(t) = f(1/t)."""
        h = iota(sqrt_weight())
        assert h(4.0) == pytest.approx(0.5)
        assert h.zero_value == math.inf
        assert not isinstance(h, WeightFunction)

    def test_power_arg_and_val(self) -> None:
        """Test f(t^s) and f(t)^s of sqrt at s = 2."""
        sigma = sqrt_weight()
        assert power_arg(sigma, 2.0)(3.0) == pytest.approx(3.0)
        assert power_val(sigma, 2.0)(3.0) == pytest.approx(3.0)
        assert power_arg(sigma, 2.0).log_ceiling == pytest.approx(sigma.log_ceiling / 2)

    def test_mul_monomial(self) -> None:
        """Test t^r f(t) keeps weight typing only for r >= 0."""
        sigma = sqrt_weight()
        assert mul_monomial(sigma, 1.0)(4.0) == pytest.approx(8.0)
        assert isinstance(mul_monomial(sigma, 1.0), WeightFunction)
        negative = mul_monomial(sigma, -1.0)
        assert not isinstance(negative, WeightFunction)
        assert negative.zero_value == math.inf

    def test_nonpositive_power(self) -> None:
        """Test that power transforms need a positive exponent."""
        with pytest.raises(DomainError):
            power_arg(sqrt_weight(), 0.0)
        with pytest.raises(DomainError):
            power_val(sqrt_weight(), -1.0)

    def test_transform_dispatch(self) -> None:
        """Test the named transform entry point."""
        assert transform(sqrt_weight(), "power_val", 2.0)(5.0) == pytest.approx(5.0)
        assert transform(sqrt_weight(), "iota")(1.0) == pytest.approx(1.0)
        with pytest.raises(DomainError, match="needs a parameter"):
            transform(sqrt_weight(), "power_arg")
        with pytest.raises(DomainError):
            transform(sqrt_weight(), "swap", 1.0)  # type: ignore[arg-type]

    @settings(max_examples=40, deadline=None)
    @seed(4242)
    @given(st.floats(min_value=0.25, max_value=4.0), st.floats(min_value=1.0, max_value=1e2))
    def test_power_arg_composes(self, s: float, t: float) -> None:
        """Test that power_arg evaluates sigma at t^s."""
        sigma = sqrt_weight()
        assert power_arg(sigma, s)(t) == pytest.approx(t ** (s / 2), rel=1e-9)

    @settings(max_examples=40, deadline=None)
    @seed(99)
    @given(st.floats(min_value=1e-3, max_value=1e3))
    def test_iota_is_involutive(self, t: float) -> None:
        """Test that applying iota twice gives back the function."""
        sigma = sqrt_weight()
        assert iota(iota(sigma))(t) == pytest.approx(sigma(t), rel=1e-12)
