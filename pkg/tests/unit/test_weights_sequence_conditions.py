"""Unit tests for the classical weight-sequence conditions."""

import numpy as np
import pytest

from growthindex.config.models import EstimatorSettings
from growthindex.core.errors import DomainError
from growthindex.core.verdict import Status
from growthindex.generators.families import gevrey_seq, m0_beta, mq
from growthindex.weights.sequence import from_values
from growthindex.weights.sequence_conditions import (
    check_condition,
    check_lc,
    parse_condition,
    relation,
)

SETTINGS = EstimatorSettings(pmax=256, xmax=1e6)


def short_table() -> np.ndarray:
    return np.log(np.arange(1, 21, dtype=float))


class TestParseCondition:
    """Tests for parse_condition."""

    def test_plain_names(self) -> None:
        """Test that plain condition names carry no parameter."""
        assert parse_condition("mg") == ("mg", None)
        assert parse_condition(" snq ") == ("snq", None)

    def test_embedded_parameter(self) -> None:
        """Test gamma_r(r) carries its parameter."""
        assert parse_condition("gamma_r(0.5)") == ("gamma_r", 0.5)

    def test_unknown(self) -> None:
        """Test that an unknown condition raises ValueError."""
        with pytest.raises(ValueError, match="unknown sequence condition"):
            parse_condition("dc")


class TestCheckLc:
    """Tests for the exact log-convexity check."""

    def test_gevrey_is_log_convex(self) -> None:
        """Test that p! is log-convex on the whole table."""
        assert check_lc(gevrey_seq(1.0, pmax=64)).holds

    def test_drop_is_located(self) -> None:
        """Test that a quotient drop names the index where it happens."""
        log_m = short_table()
        log_m[7] = log_m[6] - 0.5
        verdict = check_lc(from_values(log_m=log_m))
        assert verdict.fails
        assert verdict.witness["p"] == 7
        assert verdict.witness["drop"] == pytest.approx(0.5)


class TestCheckCondition:
    """Tests for check_condition dispatch and limit-type verdicts."""

    @pytest.mark.parametrize("cond", ["mg", "snq", "nq", "gamma_r(1)"])
    def test_short_horizon_inconclusive(self, cond: str) -> None:
        """Test that a bare table below 64 quotients is undecided."""
        verdict = check_condition(from_values(log_m=short_table()), cond, settings=SETTINGS)
        assert verdict.status is Status.INCONCLUSIVE
        assert verdict.message == "horizon too short"

    def test_gamma_r_needs_parameter(self) -> None:
        """Test that gamma_r without r is a domain error."""
        with pytest.raises(DomainError, match="gamma_r needs a parameter"):
            check_condition(gevrey_seq(1.0, pmax=64), "gamma_r", settings=SETTINGS)

    def test_gamma_r_positive(self) -> None:
        """Test that gamma_r needs r > 0."""
        with pytest.raises(DomainError, match="r > 0"):
            check_condition(gevrey_seq(1.0, pmax=64), "gamma_r", r=0.0, settings=SETTINGS)

    def test_gevrey_moderate_growth(self) -> None:
        """Test that p! has moderate growth."""
        verdict = check_condition(gevrey_seq(1.0, pmax=256, xmax=1e6), "mg", settings=SETTINGS)
        assert verdict.holds
        assert "criteria" in verdict.witness

    def test_q_gevrey_fails_moderate_growth(self) -> None:
        """Test that q^{p^2} does not have moderate growth."""
        verdict = check_condition(mq(2.0, pmax=256, xmax=1e6), "mg", settings=SETTINGS)
        assert verdict.fails
        assert "p" in verdict.witness

    def test_log_quotients_fail_snq(self) -> None:
        """Test that m_p = log(e+p+1) fails (snq) at the default horizon."""
        verdict = check_condition(m0_beta(1.0), "snq", settings=EstimatorSettings())
        assert verdict.fails
        assert verdict.message == "the ratio is infinite"

    def test_gevrey_snq_at_default_horizon(self) -> None:
        """Test that p! satisfies (snq) at the default horizon."""
        assert check_condition(gevrey_seq(1.0), "snq", settings=EstimatorSettings()).holds


class TestRelation:
    """Tests for sequence equivalences."""

    def test_self_equivalent(self) -> None:
        """Test that a sequence is equivalent to itself with C = 1."""
        M = gevrey_seq(1.0, pmax=256, xmax=1e6)
        verdict = relation(M, M, "approx", SETTINGS)
        assert verdict.holds
        assert verdict.witness["C"] == 1.0

    def test_simeq_self(self) -> None:
        """Test that quotients are equivalent to themselves with c = 1."""
        M = gevrey_seq(0.5, pmax=256, xmax=1e6)
        verdict = relation(M, M, "simeq", SETTINGS)
        assert verdict.id == "simeq_equiv"
        assert verdict.holds
        assert verdict.witness["c"] == 1.0

    def test_different_gevrey_orders(self) -> None:
        """Test that p! and p!^2 are not equivalent."""
        M = gevrey_seq(1.0, pmax=256, xmax=1e6)
        L = gevrey_seq(2.0, pmax=256, xmax=1e6)
        assert relation(M, L, "approx", SETTINGS).fails
