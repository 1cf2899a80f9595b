"""Log-domain weight sequences and quotient sequences.

A weight sequence M is stored as the table of log M_p for 0 <= p <= P_max,
optionally backed by an evaluator of log M (or of log m) at real arguments
so estimators can reach indices far beyond the table. M_p itself is never
materialized.
"""

import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np
from numpy.typing import ArrayLike
from scipy.integrate import cumulative_simpson
from scipy.special import gammaln

from growthindex.core.errors import ConstructionError, DomainError, HorizonError
from growthindex.core.logging import get_logger

logger = get_logger(__name__)

type LogEvaluator = Callable[[np.ndarray], np.ndarray]

MIN_HORIZON = 16
EVALUATOR_REL_TOL = 1e-9
EXTENSION_POINTS_PER_OCTAVE = 64
HORIZON_REL_TOL = 1e-12


def _past(index: float, limit: float) -> bool:
    """Whether index lies beyond limit by more than float round-off."""
    return index > limit * (1.0 + HORIZON_REL_TOL)


def _frozen_array(values: ArrayLike, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ConstructionError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise ConstructionError(f"{name} has a non-finite entry at p={bad}")
    arr.setflags(write=False)
    return arr


def _check_evaluator(table: np.ndarray, evaluator: LogEvaluator, name: str) -> None:
    """Verify that ``evaluator`` reproduces ``table`` at every tabulated index."""
    p = np.arange(table.size, dtype=float)
    values = np.asarray(evaluator(p), dtype=float)
    gap = np.abs(values - table) / np.maximum(1.0, np.abs(table))
    if not np.all(gap <= EVALUATOR_REL_TOL):
        bad = int(np.argmax(gap))
        raise ConstructionError(
            f"{name} evaluator disagrees with the table at p={bad} "
            f"(table {table[bad]!r}, evaluator {values[bad]!r})"
        )


@dataclass(frozen=True, eq=False)
class QuotientSequence:
    """Natural logs of a positive sequence, usually m_p = M_{p+1}/M_p.

    Attributes:
        log_m: log m_p for 0 <= p < horizon
        evaluator: Optional log m at real arguments, trusted up to ``ceiling``
        ceiling: Largest argument the evaluator is trusted at
        name: Label used in reports
        partial_sums: log M of the parent sequence when derived from one
        metadata: Free-form construction details
    """

    log_m: np.ndarray
    evaluator: LogEvaluator | None = None
    ceiling: float = 0.0
    name: str = ""
    partial_sums: np.ndarray | None = None
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "log_m", _frozen_array(self.log_m, "log_m"))
        if self.log_m.size == 0:
            raise ConstructionError("a quotient sequence needs at least one entry")
        if self.evaluator is not None:
            _check_evaluator(self.log_m, self.evaluator, "quotient")
            if self.ceiling < self.log_m.size - 1:
                object.__setattr__(self, "ceiling", float(self.log_m.size - 1))

    @property
    def horizon(self) -> int:
        return int(self.log_m.size)

    @property
    def top(self) -> float:
        """Largest index at which log m can be served."""
        if self.evaluator is not None:
            return float(self.ceiling)
        return float(self.horizon - 1)

    @property
    def nondecreasing(self) -> bool:
        return bool(np.all(np.diff(self.log_m) >= 0))

    def at(self, p: ArrayLike) -> np.ndarray:
        """log m at integer-valued indices ``p`` (floats allowed beyond the table).

        Raises:
            HorizonError: If an index lies beyond what table and evaluator serve
        """
        p = np.asarray(p, dtype=float)
        out = np.empty(p.shape)
        in_table = p < self.horizon
        if np.any(in_table):
            out[in_table] = self.log_m[p[in_table].astype(np.int64)]
        beyond = ~in_table
        if np.any(beyond):
            worst = float(np.max(p[beyond]))
            if self.evaluator is None or _past(worst, self.ceiling):
                raise HorizonError(worst, self.top)
            out[beyond] = self.evaluator(p[beyond])
        return out

    def shifted(self) -> "QuotientSequence":
        """The shifted sequence (a_{p+1})_p."""
        ev = self.evaluator
        shifted_ev = None if ev is None else (lambda x: ev(np.asarray(x, dtype=float) + 1.0))
        return QuotientSequence(
            log_m=self.log_m[1:],
            evaluator=shifted_ev,
            ceiling=max(self.ceiling - 1.0, 0.0),
            name=f"shift({self.name})",
        )


@dataclass(frozen=True, eq=False)
class WeightSequence:
    """Natural logs of a weight sequence M with M_0 = 1.

    Attributes:
        log_M: log M_p for 0 <= p <= horizon
        evaluator: Optional closed-form log M at real arguments
        quotient_evaluator: Optional closed-form log m at real arguments
        ceiling: Largest index the evaluators are trusted at
        name: Label used in reports
        quotient_table: log m of the source when built from quotients
        metadata: Free-form construction details
    """

    log_M: np.ndarray
    evaluator: LogEvaluator | None = None
    quotient_evaluator: LogEvaluator | None = None
    ceiling: float = 0.0
    name: str = ""
    quotient_table: np.ndarray | None = None
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "log_M", _frozen_array(self.log_M, "log_M"))
        if self.log_M.size < MIN_HORIZON + 1:
            raise ConstructionError(
                f"horizon {self.log_M.size - 1} is below the minimum {MIN_HORIZON}"
            )
        if self.log_M[0] != 0.0:
            raise ConstructionError(f"log_M(0) must be exactly 0, got {self.log_M[0]!r}")
        if self.evaluator is not None:
            _check_evaluator(self.log_M, self.evaluator, "sequence")
        if self.quotient_evaluator is not None:
            log_m = self.quotients_table()
            _check_evaluator(log_m, self.quotient_evaluator, "quotient")
        if self.has_evaluator and self.ceiling < self.horizon:
            object.__setattr__(self, "ceiling", float(self.horizon))

    @property
    def horizon(self) -> int:
        return int(self.log_M.size - 1)

    @property
    def has_evaluator(self) -> bool:
        return self.evaluator is not None or self.quotient_evaluator is not None

    @property
    def top(self) -> float:
        """Largest index at which log M can be served."""
        return float(self.ceiling) if self.has_evaluator else float(self.horizon)

    def quotients_table(self) -> np.ndarray:
        if self.quotient_table is not None:
            return self.quotient_table
        return np.diff(self.log_M)

    @cached_property
    def _extension(self) -> tuple[np.ndarray, np.ndarray]:
        """Cumulative integral of log m beyond the table, midpoint-corrected.

        Sum_{j=P}^{n-1} log m_j is approximated by the integral of log m over
        [P - 1/2, n - 1/2], integrated in log-argument with Simpson's rule.
        """
        if self.quotient_evaluator is None:
            raise HorizonError(self.horizon + 1, self.horizon)
        start = self.horizon - 0.5
        octaves = max(math.log2(self.ceiling / start), 1.0)
        n = int(octaves * EXTENSION_POINTS_PER_OCTAVE) + 1
        v = np.linspace(math.log(start), math.log(self.ceiling + 0.5), n)
        u = np.exp(v)
        integrand = self.quotient_evaluator(u) * u
        cumulative = cumulative_simpson(integrand, x=v, initial=0.0)
        logger.debug("Built log M extension", name=self.name, points=n)
        return u, cumulative

    def log_M_at(self, p: ArrayLike) -> np.ndarray:
        """log M at integer-valued indices ``p``.

        Raises:
            HorizonError: If an index lies beyond the table and evaluators
        """
        p = np.asarray(p, dtype=float)
        out = np.empty(p.shape)
        in_table = p <= self.horizon
        if np.any(in_table):
            out[in_table] = self.log_M[p[in_table].astype(np.int64)]
        beyond = ~in_table
        if np.any(beyond):
            worst = float(np.max(p[beyond]))
            if not self.has_evaluator or _past(worst, self.ceiling):
                raise HorizonError(worst, self.top)
            if self.evaluator is not None:
                out[beyond] = self.evaluator(p[beyond])
            else:
                u, cumulative = self._extension
                out[beyond] = self.log_M[-1] + np.interp(p[beyond] - 0.5, u, cumulative)
        return out

    def log_m_at(self, p: ArrayLike) -> np.ndarray:
        """log m at integer-valued indices ``p``."""
        p = np.asarray(p, dtype=float)
        log_m = self.quotients_table()
        out = np.empty(p.shape)
        in_table = p < log_m.size
        if np.any(in_table):
            out[in_table] = log_m[p[in_table].astype(np.int64)]
        beyond = ~in_table
        if np.any(beyond):
            worst = float(np.max(p[beyond]))
            if not self.has_evaluator or _past(worst + 1, self.ceiling):
                raise HorizonError(worst, self.top - 1)
            if self.quotient_evaluator is not None:
                out[beyond] = self.quotient_evaluator(p[beyond])
            else:
                out[beyond] = self.log_M_at(p[beyond] + 1) - self.log_M_at(p[beyond])
        return out


def quotients(M: WeightSequence) -> QuotientSequence:
    """The quotient sequence m_p = M_{p+1}/M_p in log domain."""
    evaluator: LogEvaluator | None = M.quotient_evaluator
    if evaluator is None and M.evaluator is not None:
        base = M.evaluator

        def evaluator(x: np.ndarray) -> np.ndarray:
            x = np.asarray(x, dtype=float)
            return base(x + 1.0) - base(x)

    return QuotientSequence(
        log_m=M.quotients_table(),
        evaluator=evaluator,
        ceiling=max(M.ceiling - 1.0, 0.0) if M.has_evaluator else 0.0,
        name=M.name,
        partial_sums=M.log_M,
        metadata=M.metadata,
    )


def from_quotients(
    m: QuotientSequence,
    evaluator: LogEvaluator | None = None,
    name: str = "",
    metadata: Mapping[str, Any] | None = None,
) -> WeightSequence:
    """Telescoping product M_p = m_0 m_1 ... m_{p-1} in log domain.

    Args:
        m: Quotient sequence
        evaluator: Optional closed form of log M, when one is known
        name: Label for the result (defaults to the quotient label)
        metadata: Construction details (defaults to the quotient metadata)
    """
    if m.partial_sums is not None:
        log_M = m.partial_sums
    else:
        log_M = np.concatenate(([0.0], np.cumsum(m.log_m)))
    return WeightSequence(
        log_M=log_M,
        evaluator=evaluator,
        quotient_evaluator=m.evaluator,
        ceiling=m.ceiling + 1.0 if m.evaluator is not None or evaluator is not None else 0.0,
        name=name or m.name,
        quotient_table=m.log_m,
        metadata=dict(metadata if metadata is not None else m.metadata),
    )


def pow_seq(M: WeightSequence, s: float) -> WeightSequence:
    """The power M^s = (M_p^s).

    Raises:
        DomainError: If s <= 0
    """
    if not s > 0:
        raise DomainError("s", s, "the exponent must be positive")
    evaluator = None
    if M.has_evaluator:

        def evaluator(x: np.ndarray) -> np.ndarray:
            return s * M.log_M_at(x)

    q_evaluator = None
    if M.quotient_evaluator is not None:
        base_q = M.quotient_evaluator

        def q_evaluator(x: np.ndarray) -> np.ndarray:
            return s * base_q(x)

    return WeightSequence(
        log_M=s * M.log_M,
        evaluator=evaluator,
        quotient_evaluator=q_evaluator,
        ceiling=M.ceiling,
        name=f"({M.name})^{s:g}",
        quotient_table=None if M.quotient_table is None else s * M.quotient_table,
        metadata={"base": M.name, "power": s},
    )


def gevrey_multiply(M: WeightSequence, r: float) -> WeightSequence:
    """The sequence (p!^r M_p)."""
    p = np.arange(M.horizon + 1, dtype=float)
    evaluator = None
    if M.has_evaluator:

        def evaluator(x: np.ndarray) -> np.ndarray:
            x = np.asarray(x, dtype=float)
            return r * gammaln(x + 1.0) + M.log_M_at(x)

    q_evaluator = None
    if M.quotient_evaluator is not None:
        base_q = M.quotient_evaluator

        def q_evaluator(x: np.ndarray) -> np.ndarray:
            x = np.asarray(x, dtype=float)
            return r * np.log1p(x) + base_q(x)

    table = None
    if M.quotient_table is not None:
        table = r * np.log1p(p[:-1]) + M.quotient_table
    return WeightSequence(
        log_M=r * gammaln(p + 1.0) + M.log_M,
        evaluator=evaluator,
        quotient_evaluator=q_evaluator,
        ceiling=M.ceiling,
        name=f"G{r:g}({M.name})",
        quotient_table=table,
        metadata={"base": M.name, "gevrey_shift": r},
    )


def pow_quotients(a: QuotientSequence, s: float) -> QuotientSequence:
    """The power a^s at quotient level.

    Raises:
        DomainError: If s <= 0
    """
    if not s > 0:
        raise DomainError("s", s, "the exponent must be positive")
    ev = a.evaluator
    return QuotientSequence(
        log_m=s * a.log_m,
        evaluator=None if ev is None else (lambda x: s * ev(x)),
        ceiling=a.ceiling,
        name=f"({a.name})^{s:g}",
    )


def gevrey_multiply_quotients(a: QuotientSequence, r: float) -> QuotientSequence:
    """The lift ((p+1)^r a_p), the quotients of (p!^r M_p)."""
    p = np.arange(a.horizon, dtype=float)
    ev = a.evaluator
    return QuotientSequence(
        log_m=r * np.log1p(p) + a.log_m,
        evaluator=None if ev is None else (lambda x: r * np.log1p(x) + ev(x)),
        ceiling=a.ceiling,
        name=f"G{r:g}({a.name})",
    )


def from_values(
    log_m: ArrayLike | None = None,
    log_M: ArrayLike | None = None,
    name: str = "",
) -> WeightSequence:
    """Build a weight sequence from a table of log m or of log M."""
    if (log_m is None) == (log_M is None):
        raise ValueError("exactly one of log_m and log_M must be given")
    if log_M is not None:
        return WeightSequence(log_M=np.asarray(log_M, dtype=float), name=name)
    return from_quotients(QuotientSequence(log_m=np.asarray(log_m, dtype=float), name=name))
