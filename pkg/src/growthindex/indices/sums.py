"""Log-domain partial and tail sums over the integers.

Sums are exact (log-sum-exp accumulation) up to an exact limit, continued
by adaptive quadrature of the real-argument extension of the summand, and
closed off beyond the extension point by the tail of the locally fitted
power law.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import integrate

from growthindex.core.logging import get_logger

logger = get_logger(__name__)

type LogTerm = Callable[[np.ndarray], np.ndarray]

SLOPE_SPAN = 1.0
QUAD_LIMIT = 200
DIVERGENT_LOG_POWER = 1.001


@dataclass(frozen=True, eq=False)
class LogSeries:
    """Sum of exp(log_term(k)) over integers k >= start.

    Attributes:
        log_term: Vectorized log of the summand, defined at real arguments
            beyond ``exact_limit`` when ``top`` exceeds it
        start: First summation index
        top: Largest argument the summand can be evaluated at
        exact_limit: Summation is exact for k <= exact_limit
        extension: Quadrature continues up to this argument
        rel_tol: Relative tolerance for quadrature
    """

    log_term: LogTerm
    start: int
    top: float
    exact_limit: int = 65536
    extension: float = 1e9
    rel_tol: float = 1e-6

    @property
    def last_exact(self) -> int:
        return int(min(self.exact_limit, math.floor(self.top)))

    @cached_property
    def _terms(self) -> np.ndarray:
        k = np.arange(self.start, self.last_exact + 1, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return np.asarray(self.log_term(k), dtype=float)

    @cached_property
    def _prefix(self) -> np.ndarray:
        return np.logaddexp.accumulate(self._terms)

    @cached_property
    def _suffix(self) -> np.ndarray:
        return np.logaddexp.accumulate(self._terms[::-1])[::-1]

    def _log_at(self, x: float) -> float:
        with np.errstate(divide="ignore", over="ignore"):
            return float(np.asarray(self.log_term(np.array([x], dtype=float)))[0])

    def log_integral(self, a: float, b: float) -> float:
        """log of the integral of exp(log_term) over [a, b]."""
        if not b > a:
            return -math.inf
        va, vb = math.log(a), math.log(b)
        nodes = np.linspace(va, vb, 33)
        with np.errstate(divide="ignore", over="ignore"):
            x = np.clip(np.exp(nodes), a, b)
            sampled = np.asarray(self.log_term(x), dtype=float) + nodes
        if not np.any(np.isfinite(sampled)):
            return -math.inf if np.all(np.isneginf(sampled)) else math.inf
        ref = float(np.max(sampled[np.isfinite(sampled)]))
        if np.any(np.isposinf(sampled)):
            return math.inf

        def integrand(v: float) -> float:
            x = min(max(math.exp(v), a), b)
            return math.exp(min(self._log_at(x) + v - ref, 700.0))

        value, _ = integrate.quad(
            integrand, va, vb, epsrel=self.rel_tol, limit=QUAD_LIMIT, points=nodes[1:-1]
        )
        return ref + math.log(value) if value > 0 else -math.inf

    def local_slope(self, x: float) -> float:
        """d log_term / d log x near x, from a one-e-fold secant."""
        lo = x / math.exp(SLOPE_SPAN)
        return (self._log_at(x) - self._log_at(lo)) / SLOPE_SPAN

    def log_power_exponent(self, x: float) -> float:
        """b in the local fit term(x) ~ C / (x log^b x), from a one-e-fold secant.

        Infinite when x is too small for log log to be taken.
        """
        lo = x / math.exp(SLOPE_SPAN)
        if not lo > math.e:
            return math.inf
        rise = self._log_at(x) - self._log_at(lo) + SLOPE_SPAN
        return -rise / (math.log(math.log(x)) - math.log(math.log(lo)))

    def log_power_tail(self, x: float) -> float:
        """log of the tail integral beyond x under the fitted local power law.

        Summands decaying no faster than 1/(x log x) give an infinite tail.
        """
        kappa = self.local_slope(x)
        if not kappa < -1.0 or self.log_power_exponent(x) <= DIVERGENT_LOG_POWER:
            return math.inf
        return self._log_at(x) + math.log(x) - math.log(-kappa - 1.0)

    @cached_property
    def _log_beyond_exact(self) -> float:
        """Everything past the exact range: quadrature, then the power tail."""
        a = self.last_exact + 0.5
        b = min(self.top, self.extension)
        parts = [self.log_integral(a, b)] if b > a else []
        parts.append(self.log_power_tail(min(max(b, a), self.top)))
        return float(np.logaddexp.reduce(parts))

    def log_partial(self, p: float) -> float:
        """log sum_{k=start}^{p}."""
        if p < self.start:
            return -math.inf
        if p <= self.last_exact:
            return float(self._prefix[int(p) - self.start])
        head = float(self._prefix[-1])
        return float(np.logaddexp(head, self.log_integral(self.last_exact + 0.5, p + 0.5)))

    def log_tail(self, p: float) -> float:
        """log sum_{k>=p} (infinite when the fitted tail does not converge)."""
        p = max(p, self.start)
        if p <= self.last_exact:
            return float(np.logaddexp(self._suffix[int(p) - self.start], self._log_beyond_exact))
        b = min(self.top, self.extension)
        parts = [self.log_integral(p - 0.5, b)] if b > p - 0.5 else []
        parts.append(self.log_power_tail(min(max(b, p), self.top)))
        return float(np.logaddexp.reduce(parts))

    def log_total(self) -> float:
        return self.log_tail(self.start)


def integer_points(lo: float, hi: float, count: int = 24) -> np.ndarray:
    """Distinct integers log-spaced over [e^lo, e^hi]."""
    raw = np.floor(np.exp(np.linspace(lo, hi, count)))
    return np.unique(np.maximum(raw, 1.0))
