"""Strongly regular sequence with four prescribed quotient indices.

The quotients are m_p = omega(p) with omega(x) = exp(int_1^x xi(u) du/u),
where xi takes the value alpha on [2^(a^n), 2^(b a^n)) and beta on
[2^(b a^n), 2^(a^(n+1))) and equals mu on [1, 2). In y = log2 x the blocks
are [a^n, b a^n) and [b a^n, a^(n+1)), so log omega is an exact sum of
block contributions.
"""

import math

import numpy as np

from growthindex.core.errors import DomainError
from growthindex.core.logging import get_logger
from growthindex.weights.sequence import QuotientSequence, WeightSequence, from_quotients

logger = get_logger(__name__)

LOG2 = math.log(2.0)


def four_index_parameters(
    beta: float, mu: float, rho: float, alpha: float
) -> tuple[float, float]:
    """Block exponents (a, b) realizing the indices beta < mu < rho < alpha.

    b = (alpha - mu)/(alpha - rho) and a = b (rho - beta)/(mu - beta).

    Raises:
        DomainError: If 0 < beta < mu < rho < alpha fails, or a > b > 1 fails
    """
    if not 0 < beta < mu < rho < alpha < math.inf:
        raise DomainError(
            "indices", (beta, mu, rho, alpha), "need 0 < beta < mu < rho < alpha < inf"
        )
    b = (alpha - mu) / (alpha - rho)
    a = b * (rho - beta) / (mu - beta)
    if not a > b > 1:
        raise DomainError("indices", (beta, mu, rho, alpha), f"derived a={a:g}, b={b:g}")
    return a, b


def orders_from_blocks(a: float, b: float, beta: float, alpha: float) -> tuple[float, float]:
    """Orders (mu, rho) produced by block exponents a, b and block values beta, alpha."""
    mu = ((b - 1.0) * alpha + (a - b) * beta) / (a - 1.0)
    rho = (a * (b - 1.0) * alpha + (a - b) * beta) / (b * (a - 1.0))
    return mu, rho


def _overlap(y: np.ndarray, lo: float, hi: float) -> np.ndarray:
    return np.clip(y, lo, hi) - lo


def log_omega_blocks(
    x: np.ndarray, beta: float, mu: float, alpha: float, a: float, b: float
) -> np.ndarray:
    """log omega(x) for x >= 1 by exact block accounting."""
    y = np.log2(np.maximum(np.asarray(x, dtype=float), 1.0))
    out = mu * np.minimum(y, 1.0)
    top = float(np.max(y)) if y.size else 0.0
    start = 1.0
    while start < top:
        out = out + alpha * _overlap(y, start, b * start)
        out = out + beta * _overlap(y, b * start, a * start)
        start *= a
    return LOG2 * out


def four_index_sequence(
    beta: float, mu: float, rho: float, alpha: float, pmax: int = 4096, xmax: float = 1e12
) -> WeightSequence:
    """Weight sequence whose quotients have indices beta(m), mu(m), rho(m), alpha(m).

    m_p = omega(p) for p >= 2 and m_0 = m_1 = omega(2).
    """
    a, b = four_index_parameters(beta, mu, rho, alpha)
    if pmax < 16:
        raise DomainError("pmax", pmax, "the horizon must be at least 16")

    def evaluator(x: np.ndarray) -> np.ndarray:
        x = np.maximum(np.asarray(x, dtype=float), 2.0)
        return log_omega_blocks(x, beta, mu, alpha, a, b)

    p = np.arange(pmax, dtype=float)
    logger.debug("Built four-index blocks", a=a, b=b)
    m = QuotientSequence(
        log_m=evaluator(p),
        evaluator=evaluator,
        ceiling=xmax - 1.0,
        name=f"four_index({beta:g},{mu:g},{rho:g},{alpha:g})",
        metadata={
            "family": "four_index",
            "beta": beta,
            "mu": mu,
            "rho": rho,
            "alpha": alpha,
            "a": a,
            "b": b,
        },
    )
    return from_quotients(m)
