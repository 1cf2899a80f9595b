"""Associated functions omega_M, counting functions nu_m and weight matrices.

For a weight sequence M the associated function is
omega_M(t) = sup_p log(t^p / M_p) and the counting function is
nu_m(t) = #{j : m_j <= t}. When M is log-convex the supremum is attained at
p = nu_m(t), which gives the closed partial-sum form
omega_M(t) = nu_m(t) log t - log M_{nu_m(t)}; otherwise the supremum is
taken directly over the table.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike

from growthindex.config.models import EstimatorSettings
from growthindex.core.errors import DivergenceError, DomainError, HorizonError, VerificationError
from growthindex.core.logging import get_logger
from growthindex.core.tails import bounded_above, log_windows
from growthindex.core.verdict import PropertyVerdict, fails, holds, inconclusive
from growthindex.indices.sums import integer_points
from growthindex.legendre.graph import Extremum, grid_extremum
from growthindex.weights.function import EvaluableFunction, WeightFunction
from growthindex.weights.sequence import MIN_HORIZON, WeightSequence

logger = get_logger(__name__)

IDENTITY_REL_TOL = 1e-9
CROSS_CHECK_POINTS = 256
SUP_CHUNK = 512
BISECTION_STEPS = 128
PHI_GRID = 4096
LC_SLACK = 1e-9
LOG_FLOOR = -700.0


def direct_sup(log_M: np.ndarray, s: ArrayLike) -> np.ndarray:
    """max over tabulated p of p s - log M_p at log-arguments s."""
    s = np.asarray(s, dtype=float)
    flat = np.maximum(s.ravel(), LOG_FLOOR)
    p = np.arange(log_M.size, dtype=float)
    out = np.empty(flat.shape)
    for start in range(0, flat.size, SUP_CHUNK):
        block = flat[start : start + SUP_CHUNK]
        out[start : start + SUP_CHUNK] = np.max(np.outer(block, p) - log_M, axis=1)
    return out.reshape(s.shape)


def sup_ceiling(log_M: np.ndarray) -> float:
    """Largest log t at which the sup over the table is attained below its last index."""
    P = log_M.size - 1
    k = np.arange(P, dtype=float)
    return float(np.min((log_M[-1] - log_M[:-1]) / (P - k)))


@dataclass(frozen=True, eq=False)
class AssociatedPair:
    """omega_M and nu_m of one weight sequence, sharing a crossover table.

    Attributes:
        M: The weight sequence
        crossover: Sorted log m_p, the log-arguments at which nu_m jumps
        log_convex: Whether the closed partial-sum form applies
        log_ceiling: Largest log t at which omega_M and nu_m are served
        bounded_quotients: Whether log m stays bounded along the table tail
    """

    M: WeightSequence
    crossover: np.ndarray
    log_convex: bool
    log_ceiling: float
    bounded_quotients: bool = False

    @property
    def name(self) -> str:
        return self.M.name

    @property
    def extends(self) -> bool:
        """Whether counts beyond the table come from the quotient evaluator."""
        return self.log_convex and self.M.has_evaluator

    def _guard(self, s: np.ndarray) -> None:
        if s.size and float(np.max(s)) > self.log_ceiling:
            worst = float(np.max(s))
            if self.bounded_quotients and worst > float(self.crossover[-1]):
                raise DivergenceError(math.exp(min(worst, 700.0)))
            raise HorizonError(
                math.exp(min(worst, 700.0)), math.exp(min(self.log_ceiling, 700.0)), "argument"
            )

    def _bisect(self, s: np.ndarray) -> np.ndarray:
        """First index j >= P with log m_j > s, for log-convex M with an evaluator."""
        top = math.floor(self.M.top - 1.0)
        lo = np.full(s.shape, float(self.crossover.size))
        hi = np.full(s.shape, float(top))
        for _ in range(BISECTION_STEPS):
            open_ = hi > lo
            if not np.any(open_):
                break
            mid = np.floor((lo + hi) / 2.0)
            above = self.M.log_m_at(mid) > s
            hi = np.where(open_ & above, mid, hi)
            lo = np.where(open_ & ~above, mid + 1.0, lo)
        return np.where(self.M.log_m_at(lo) > s, lo, lo + 1.0)

    def counts(self, s: ArrayLike) -> np.ndarray:
        """nu_m(e^s), ties m_j = e^s counted.

        Raises:
            HorizonError: If the count would be censored by the horizon
            DivergenceError: If the quotients are bounded below e^s
        """
        s = np.asarray(s, dtype=float)
        self._guard(s)
        n = np.searchsorted(self.crossover, s, side="right").astype(float)
        if self.extends:
            beyond = s >= self.crossover[-1]
            if np.any(beyond):
                n[beyond] = self._bisect(s[beyond])
        return n

    def omega_values(self, s: ArrayLike) -> np.ndarray:
        """omega_M(e^s); the value at t = 0 is 0.

        Raises:
            HorizonError: If the supremum would be censored by the horizon
            DivergenceError: If the supremum is infinite at e^s
        """
        s = np.asarray(s, dtype=float)
        if not self.log_convex:
            self._guard(s)
            return direct_sup(self.M.log_M, s)
        n = self.counts(s)
        safe = np.maximum(s, LOG_FLOOR)
        return np.where(n > 0, n * safe - self.M.log_M_at(n), 0.0)

    @cached_property
    def omega(self) -> WeightFunction:
        """omega_M as a weight function, trusted up to ``log_ceiling``."""

        def log_profile(s: np.ndarray) -> np.ndarray:
            with np.errstate(divide="ignore"):
                return np.log(np.maximum(self.omega_values(s), 0.0))

        return WeightFunction(
            log_profile=log_profile,
            log_ceiling=self.log_ceiling,
            threshold=math.e * math.exp(float(self.M.log_M[1])),
            name=f"omega({self.name})",
            metadata={"source": self.name, "log_convex": self.log_convex},
        )

    @cached_property
    def nu(self) -> WeightFunction:
        """nu_m as a step weight function."""

        def log_profile(s: np.ndarray) -> np.ndarray:
            with np.errstate(divide="ignore"):
                return np.log(self.counts(s))

        return WeightFunction(
            log_profile=log_profile,
            log_ceiling=self.log_ceiling,
            threshold=math.exp(float(self.crossover[0])),
            name=f"nu({self.name})",
            is_step=True,
            metadata={"source": self.name},
        )


def _quotients_bounded(M: WeightSequence, settings: EstimatorSettings) -> bool:
    top = M.horizon - 1
    if top < 8:
        return False
    log_m = M.quotients_table()
    windows = log_windows(0.0, math.log(top), settings.windows)
    maxima = [
        float(np.max(log_m[integer_points(lo, hi).astype(np.int64)])) for lo, hi in windows
    ]
    return bounded_above(maxima) is True


def _cross_check(pair: AssociatedPair) -> None:
    """Compare the partial-sum form with the direct supremum on the table.

    Raises:
        VerificationError: If the two computations disagree
    """
    table = pair.M.quotients_table()
    index = np.unique(np.linspace(0, table.size - 1, CROSS_CHECK_POINTS).astype(np.int64))
    s = np.concatenate((table[index], table[index] - 0.5))
    s = s[s < min(float(table[-1]), pair.log_ceiling)]
    closed = pair.omega_values(s)
    direct = direct_sup(pair.M.log_M, s)
    gap = np.abs(closed - direct) / np.maximum(1.0, np.abs(direct))
    worst = int(np.argmax(gap)) if gap.size else 0
    if gap.size and gap[worst] > IDENTITY_REL_TOL:
        raise VerificationError(
            "omega_partial_sum",
            "omega_direct_sup",
            f"{pair.name} at log t={s[worst]:g}: {closed[worst]!r} vs {direct[worst]!r}",
        )


def associate(M: WeightSequence, settings: EstimatorSettings | None = None) -> AssociatedPair:
    """Build omega_M and nu_m of a weight sequence.

    The crossover table is built once. For log-convex M the partial-sum form
    of omega_M is cross-validated against the direct supremum on the table.

    Raises:
        VerificationError: If the two forms of omega_M disagree
    """
    settings = settings or EstimatorSettings()
    log_m = M.quotients_table()
    log_convex = bool(np.all(np.diff(log_m) >= 0))
    crossover = np.sort(log_m)
    crossover.setflags(write=False)
    if log_convex and M.has_evaluator:
        ceiling = float(M.log_m_at(np.array([math.floor(M.top - 1.0)]))[0])
    elif log_convex:
        ceiling = float(log_m[-1])
    else:
        ceiling = min(float(crossover[-1]), sup_ceiling(M.log_M))
    pair = AssociatedPair(
        M=M,
        crossover=crossover,
        log_convex=log_convex,
        log_ceiling=min(ceiling, settings.associated_log_cap),
        bounded_quotients=_quotients_bounded(M, settings),
    )
    if log_convex:
        _cross_check(pair)
    logger.debug(
        "Associated pair",
        name=M.name,
        log_convex=log_convex,
        log_ceiling=pair.log_ceiling,
    )
    return pair


def omega_M(
    M: WeightSequence | AssociatedPair, t: ArrayLike, settings: EstimatorSettings | None = None
) -> np.ndarray:
    """omega_M(t) = sup_p log(t^p / M_p) for t >= 0.

    Raises:
        DomainError: If some t is negative
        HorizonError: If the supremum would be censored by the horizon
        DivergenceError: If the supremum is infinite
    """
    pair = M if isinstance(M, AssociatedPair) else associate(M, settings)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("t", float(np.min(t)), "omega_M is defined for t >= 0")
    with np.errstate(divide="ignore"):
        return pair.omega_values(np.log(t))


def nu_m(
    M: WeightSequence | AssociatedPair, t: ArrayLike, settings: EstimatorSettings | None = None
) -> np.ndarray:
    """nu_m(t) = #{j : m_j <= t}.

    Raises:
        HorizonError: If t lies beyond the served quotients
    """
    pair = M if isinstance(M, AssociatedPair) else associate(M, settings)
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore"):
        return pair.counts(np.log(np.maximum(t, 0.0))).astype(np.int64)


def default_t_grid(M: WeightSequence, points: int = 64) -> np.ndarray:
    """Geometric grid from below m_0 up to the last tabulated quotient."""
    table = M.quotients_table()
    lo, hi = float(np.min(table)) - 1.0, float(np.max(table))
    return np.exp(np.linspace(lo, max(hi, lo + 1.0), points))


def integral_relation_check(
    M: WeightSequence | AssociatedPair, t_grid: ArrayLike | None = None
) -> PropertyVerdict:
    """omega_M(t) = int_0^t nu_m(r)/r dr, the integral summed exactly over the steps of nu_m.

    Grid points whose count would need quotients beyond the table are skipped.
    """
    pair = M if isinstance(M, AssociatedPair) else associate(M)
    if not pair.log_convex:
        return inconclusive("integral_relation", "M is not log-convex")
    table = pair.M.quotients_table()
    t = np.asarray(default_t_grid(pair.M) if t_grid is None else t_grid, dtype=float)
    with np.errstate(divide="ignore"):
        s = np.log(t)
    usable = s <= min(float(table[-1]), pair.log_ceiling)
    if not np.any(usable):
        return inconclusive("integral_relation", "no grid point inside the table")
    s = s[usable]
    # nu = k on [m_{k-1}, m_k), so the integral is sum_k k (min(s, log m_k) - log m_{k-1})
    k = np.arange(1, table.size, dtype=float)
    integral = np.empty(s.shape)
    for i, v in enumerate(s):
        if v < table[0]:
            integral[i] = 0.0
            continue
        upper = np.minimum(v, table[1:])
        pieces = np.maximum(upper - table[:-1], 0.0)
        integral[i] = float(np.sum(k * pieces))
    omega = pair.omega_values(s)
    gap = np.abs(integral - omega) / np.maximum(1.0, np.abs(omega))
    worst = int(np.argmax(gap))
    witness = {"max_rel_gap": float(gap[worst]), "points": int(s.size)}
    if gap[worst] <= IDENTITY_REL_TOL:
        return holds("integral_relation", **witness)
    return fails(
        "integral_relation",
        "the step integral disagrees with omega_M",
        t=math.exp(float(s[worst])),
        **witness,
    )


def d_M(pair: AssociatedPair) -> EvaluableFunction:
    """t -> log omega_M(t) / log t, restricted to where omega_M(t) >= 1."""
    floor = max(1.0 + float(pair.M.log_M[1]), 1.0)
    if not pair.log_ceiling > floor:
        raise HorizonError(math.e**floor, math.exp(min(pair.log_ceiling, 700.0)), "argument")
    omega = pair.omega

    def log_profile(s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.log(np.maximum(omega.profile(s), 0.0) / s)

    return EvaluableFunction(
        log_profile=log_profile,
        log_ceiling=pair.log_ceiling,
        log_floor=floor,
        name=f"d({pair.name})",
        metadata={"source": pair.name},
    )


def phi_star(
    omega: EvaluableFunction, x: ArrayLike, settings: EstimatorSettings | None = None
) -> Extremum:
    """phi*_omega(x) = sup{xy - omega(e^y) : 0 <= y <= log X}, X the trusted ceiling.

    Maximizers within 1% of log X are flagged as censored.

    Raises:
        DomainError: If some x is negative
    """
    settings = settings or EstimatorSettings()
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(x < 0):
        raise DomainError("x", float(np.min(x)), "phi* is evaluated at x >= 0")
    top = min(omega.log_ceiling, settings.associated_log_cap)
    y = np.linspace(0.0, top, PHI_GRID + 1)
    with np.errstate(over="ignore"):
        w = np.exp(omega.profile(y))

    def matrix(rows: np.ndarray) -> np.ndarray:
        return np.outer(x[rows], y) - w

    def objective(v: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore"):
            return x * v - np.exp(omega.profile(v))

    result = grid_extremum(matrix, objective, y, x.size, maximize=True)
    if result.any_censored:
        logger.warning(
            "Censored phi* maxima",
            name=omega.name,
            count=int(np.sum(result.censored)),
            first_x=float(x[np.argmax(result.censored)]),
        )
    return result


def weight_matrix(
    omega: EvaluableFunction,
    ell: float,
    j: ArrayLike,
    settings: EstimatorSettings | None = None,
) -> Extremum:
    """log W^ell_j = phi*_omega(ell j) / ell.

    Raises:
        DomainError: If ell <= 0 or some j is negative
    """
    if not ell > 0:
        raise DomainError("ell", ell, "the matrix parameter must be positive")
    j = np.atleast_1d(np.asarray(j, dtype=float))
    if np.any(j < 0):
        raise DomainError("j", float(np.min(j)), "indices must be nonnegative")
    star = phi_star(omega, ell * j, settings)
    return Extremum(value=star.value / ell, argument=star.argument, censored=star.censored)


def _lc_verdict(condition_id: str, log_W: np.ndarray) -> PropertyVerdict:
    second = np.diff(log_W, 2)
    scale = np.maximum(1.0, np.abs(log_W[2:]))
    drops = np.flatnonzero(second < -LC_SLACK * scale)
    if drops.size:
        p = int(drops[0]) + 1
        return fails(condition_id, "W_p^2 > W_{p-1} W_{p+1}", p=p, drop=float(-second[p - 1]))
    return holds(condition_id, horizon=int(log_W.size - 1))


def weight_matrix_sequence(
    omega: EvaluableFunction,
    ell: float,
    horizon: int = 512,
    settings: EstimatorSettings | None = None,
) -> tuple[WeightSequence, PropertyVerdict]:
    """The sequence (W^ell_j / W^ell_0) with the log-convexity verdict of (W^ell_j).

    Censored entries end the table.

    Raises:
        HorizonError: If censoring leaves fewer than the minimum horizon
    """
    w = weight_matrix(omega, ell, np.arange(horizon + 1), settings)
    size = horizon + 1
    if w.any_censored:
        size = int(np.argmax(w.censored))
        if size <= MIN_HORIZON:
            raise HorizonError(size, MIN_HORIZON, "uncensored weight matrix index")
        logger.warning("Truncated weight matrix", name=omega.name, ell=ell, horizon=size - 1)
    log_W = w.value[:size]
    verdict = _lc_verdict("weight_matrix_lc", log_W)
    W = WeightSequence(
        log_M=log_W - log_W[0],
        name=f"W^{ell:g}({omega.name})",
        metadata={"source": omega.name, "ell": ell, "log_W0": float(log_W[0])},
    )
    return W, verdict
