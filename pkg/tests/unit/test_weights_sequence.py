"""Unit tests for log-domain weight and quotient sequences."""

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.special import gammaln

from growthindex.core.errors import ConstructionError, DomainError, HorizonError
from growthindex.weights.sequence import (
    QuotientSequence,
    WeightSequence,
    from_quotients,
    from_values,
    gevrey_multiply,
    gevrey_multiply_quotients,
    pow_quotients,
    pow_seq,
    quotients,
)

P = 32


def factorial_table(horizon: int = P) -> np.ndarray:
    return gammaln(np.arange(horizon + 1, dtype=float) + 1.0)


def factorial_sequence(horizon: int = P, with_evaluator: bool = False) -> WeightSequence:
    return WeightSequence(
        log_M=factorial_table(horizon),
        evaluator=(lambda x: gammaln(np.asarray(x) + 1.0)) if with_evaluator else None,
        ceiling=1e6 if with_evaluator else 0.0,
        name="p!",
    )


class TestWeightSequence:
    """Tests for WeightSequence construction and access."""

    def test_horizon_and_quotients(self) -> None:
        """Test the horizon and quotient table of p!."""
        M = factorial_sequence()
        assert M.horizon == P
        np.testing.assert_allclose(M.quotients_table(), np.log(np.arange(1, P + 1)))

    def test_short_table_rejected(self) -> None:
        """Test a table below the minimum horizon is rejected."""
        with pytest.raises(ConstructionError, match="below the minimum"):
            WeightSequence(log_M=factorial_table(8))

    def test_nonzero_start_rejected(self) -> None:
        """Test that M_0 must be 1."""
        with pytest.raises(ConstructionError, match="must be exactly 0"):
            WeightSequence(log_M=factorial_table() + 1.0)

    def test_non_finite_rejected(self) -> None:
        """Test that a non-finite entry names its index."""
        table = factorial_table()
        table[5] = np.inf
        with pytest.raises(ConstructionError, match="p=5"):
            WeightSequence(log_M=table)

    def test_evaluator_must_match_table(self) -> None:
        """Test that a disagreeing evaluator is rejected."""
        with pytest.raises(ConstructionError, match="evaluator disagrees"):
            WeightSequence(log_M=factorial_table(), evaluator=lambda x: 2 * gammaln(x + 1.0))

    def test_table_is_read_only(self) -> None:
        """Test the stored table cannot be modified."""
        M = factorial_sequence()
        with pytest.raises(ValueError, match="read-only"):
            M.log_M[1] = 3.0

    def test_beyond_table_without_evaluator(self) -> None:
        """Test that indices past the table raise HorizonError."""
        with pytest.raises(HorizonError):
            factorial_sequence().log_M_at([P + 1])

    def test_evaluator_extends_table(self) -> None:
        """Test that a closed form serves indices beyond the table."""
        M = factorial_sequence(with_evaluator=True)
        assert M.top == 1e6
        assert M.log_M_at([100.0])[0] == pytest.approx(gammaln(101.0))
        assert M.log_m_at([100.0])[0] == pytest.approx(np.log(101.0))

    def test_round_off_at_the_ceiling(self) -> None:
        """Test that an index a few ulps past the ceiling is still served."""
        M = factorial_sequence(with_evaluator=True)
        edge = 1e6 + 1e-8
        assert M.log_M_at([edge])[0] == pytest.approx(gammaln(edge + 1.0))
        assert M.log_m_at([edge - 1.0])[0] == pytest.approx(np.log(edge))

    def test_past_the_ceiling(self) -> None:
        """Test that an index clearly past the ceiling raises HorizonError."""
        with pytest.raises(HorizonError):
            factorial_sequence(with_evaluator=True).log_M_at([1e6 + 1.0])

    def test_quotient_evaluator_extension(self) -> None:
        """Test log M beyond the table from an integrated quotient evaluator."""
        m = QuotientSequence(
            log_m=np.log(np.arange(1, P + 1, dtype=float)),
            evaluator=lambda x: np.log1p(np.asarray(x)),
            ceiling=1e4,
        )
        M = from_quotients(m)
        assert M.log_M_at([1000.0])[0] == pytest.approx(gammaln(1001.0), rel=1e-4)


class TestQuotientSequence:
    """Tests for QuotientSequence."""

    def test_at_and_horizon(self) -> None:
        """Test table access by index."""
        m = QuotientSequence(log_m=np.array([0.0, 1.0, 2.0]))
        assert m.horizon == 3
        assert m.top == 2.0
        assert m.at([0, 2]).tolist() == [0.0, 2.0]
        assert m.nondecreasing

    def test_beyond_horizon(self) -> None:
        """Test that a bare table cannot serve later indices."""
        with pytest.raises(HorizonError):
            QuotientSequence(log_m=np.array([0.0, 1.0])).at([5])

    def test_empty_rejected(self) -> None:
        """Test that a quotient sequence needs at least one entry."""
        with pytest.raises(ConstructionError, match="at least one entry"):
            QuotientSequence(log_m=np.array([]))

    def test_shifted(self) -> None:
        """Test the shifted sequence drops the first entry."""
        shifted = QuotientSequence(log_m=np.array([0.0, 1.0, 3.0])).shifted()
        assert shifted.log_m.tolist() == [1.0, 3.0]


class TestConversions:
    """Tests for from_values, quotients and from_quotients."""

    def test_from_log_m(self) -> None:
        """Test building M from log m by telescoping."""
        M = from_values(log_m=np.log(np.arange(1, P + 1, dtype=float)), name="fact")
        np.testing.assert_allclose(M.log_M, factorial_table())
        assert M.name == "fact"

    def test_from_values_needs_exactly_one(self) -> None:
        """Test that exactly one of log_m and log_M is required."""
        with pytest.raises(ValueError, match="exactly one"):
            from_values()

    def test_quotients_keep_evaluator(self) -> None:
        """Test that quotients of a closed form extend beyond the table."""
        m = quotients(factorial_sequence(with_evaluator=True))
        assert m.at([200.0])[0] == pytest.approx(np.log(201.0))

    @settings(max_examples=40, deadline=None)
    @seed(1729)
    @given(arrays(np.float64, 20, elements=st.floats(min_value=-5, max_value=5)))
    def test_quotients_invert_partial_sums(self, log_m: np.ndarray) -> None:
        """Test that the quotient table of from_values(log_m) is log_m."""
        M = from_values(log_m=log_m)
        np.testing.assert_allclose(quotients(M).log_m, log_m)
        assert M.log_M[0] == 0.0


class TestTransforms:
    """Tests for powers and Gevrey shifts."""

    def test_pow_seq(self) -> None:
        """Test that powers scale log M."""
        M = pow_seq(factorial_sequence(), 0.5)
        np.testing.assert_allclose(M.log_M, 0.5 * factorial_table())

    def test_pow_seq_needs_positive_exponent(self) -> None:
        """Test that a nonpositive exponent is rejected."""
        with pytest.raises(DomainError):
            pow_seq(factorial_sequence(), 0.0)

    def test_gevrey_multiply(self) -> None:
        """Test that multiplying 1 by p!^r gives the Gevrey sequence."""
        ones = WeightSequence(log_M=np.zeros(P + 1))
        np.testing.assert_allclose(gevrey_multiply(ones, 2.0).log_M, 2 * factorial_table())

    def test_quotient_transforms(self) -> None:
        """Test the quotient level power and lift."""
        a = QuotientSequence(log_m=np.zeros(4))
        assert pow_quotients(QuotientSequence(log_m=np.ones(4)), 2.0).log_m.tolist() == [2.0] * 4
        np.testing.assert_allclose(gevrey_multiply_quotients(a, 1.0).log_m, np.log1p(np.arange(4)))

    def test_pow_quotients_needs_positive_exponent(self) -> None:
        """Test that a nonpositive exponent is rejected."""
        with pytest.raises(DomainError):
            pow_quotients(QuotientSequence(log_m=np.ones(2)), -1.0)
