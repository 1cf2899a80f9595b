"""Matuszewska indices, growth orders and the growth indices gamma and gamma_bar.

All estimators work on the log profile phi(s) = log f(e^s). For lambda = e^h,
log f(lambda x)/f(x) is the increment phi(s + h) - phi(s), so the upper index
is the infimum over h of the limsup of increments divided by h, and the
lower index the supremum over h of the liminf. Limits are finite-horizon
proxies taken over the last log-doubling windows below the trusted ceiling.
"""

import itertools
import math
from collections.abc import Callable
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, Field

from growthindex.config.models import EstimatorSettings
from growthindex.core.errors import DomainError
from growthindex.core.logging import get_logger
from growthindex.core.tails import (
    TailTrend,
    Trend,
    classify_tail,
    log_windows,
    per_window,
    snap_extended,
    window_grid,
)
from growthindex.core.verdict import ExtendedReal, PropertyVerdict, fails, holds, inconclusive
from growthindex.weights.function import EvaluableFunction, iota, step_embedding
from growthindex.weights.sequence import QuotientSequence, WeightSequence, quotients

logger = get_logger(__name__)

LOG2 = math.log(2.0)
LAMBDA_RESOLUTION = 8
INDEX_RESOLUTION = 32
GAMMA_GRID = tuple(2.0 ** (i / 8) for i in range(-40, 41))

type Reducer = Callable[[np.ndarray], float]


class IndexEstimate(BaseModel):
    """One estimated index with the window it was read from.

    ``window`` is the lambda range for alpha/beta and the x range for mu/rho.
    """

    model_config = {"frozen": True}

    value: ExtendedReal
    window: list[ExtendedReal] = Field(default_factory=list)
    residual: ExtendedReal = 0.0
    trend: str = Trend.STABLE.value


class IndexReport(BaseModel):
    """Estimated alpha, beta, mu, rho, gamma and gamma_bar of one function."""

    model_config = {"frozen": True}

    name: str = ""
    alpha: IndexEstimate
    beta: IndexEstimate
    mu: IndexEstimate
    rho: IndexEstimate
    gamma: ExtendedReal
    gamma_bar: ExtendedReal
    method: Literal["slope_fit", "inf_over_lambda", "closed_form_oracle"] = "inf_over_lambda"
    window: list[ExtendedReal] = Field(default_factory=list)
    residual: ExtendedReal = 0.0
    gamma_check: PropertyVerdict | None = None
    ordering: PropertyVerdict | None = None


def reciprocal(value: float) -> float:
    """1/x on the extended half line: 1/0 = inf and 1/inf = 0."""
    if math.isnan(value):
        return value
    if value == 0:
        return math.inf
    if math.isinf(value):
        return 0.0
    return 1.0 / value


def log_range(
    f: EvaluableFunction, settings: EstimatorSettings, log_ceiling: float | None = None
) -> tuple[float, float]:
    """Trusted log-argument range [s_lo, s_hi] used for tail statistics.

    Raises:
        DomainError: If the range is empty
    """
    hi = log_ceiling if log_ceiling is not None else min(f.log_ceiling, settings.log_xmax)
    lo = f.tail_start
    base = max(lo, 0.0) if hi > 0 else lo
    if not hi > base:
        raise DomainError("ceiling", math.exp(min(hi, 700.0)), f"{f.name}: no trusted tail")
    return lo, hi


def lambda_steps(lo: float, hi: float, settings: EstimatorSettings) -> list[float]:
    """Increments h = log lambda, lambda = 2^k, resolvable inside [lo, hi].

    h stays below 1/32 of the range so that the last windows still hold whole
    stretches of length h below the horizon.
    """
    span = hi - (max(lo, 0.0) if hi > 0 else lo)
    limit = span / INDEX_RESOLUTION
    steps = [k * LOG2 for k in range(1, settings.lambda_exponents + 1) if k * LOG2 <= limit]
    return steps or [limit]


def _increment(f: EvaluableFunction, h: float) -> Callable[[np.ndarray], np.ndarray]:
    def statistic(s: np.ndarray) -> np.ndarray:
        return f.profile(s + h) - f.profile(s)

    return statistic


def _windowed(
    statistic: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    settings: EstimatorSettings,
    reducer: Reducer,
) -> TailTrend:
    windows = log_windows(lo, hi, settings.windows)
    values = per_window(
        statistic, windows, settings.points_per_decade, settings.max_window_points, reducer
    )
    return classify_tail(values)


def up_ratio(
    f: EvaluableFunction,
    lam: float,
    settings: EstimatorSettings | None = None,
    log_ceiling: float | None = None,
) -> float:
    """Finite-horizon f^up(lambda): sup of f(lambda x)/f(x) over the tail windows.

    Raises:
        DomainError: If lambda < 1
    """
    if not lam >= 1:
        raise DomainError("lambda", lam, "up_ratio needs lambda >= 1")
    settings = settings or EstimatorSettings()
    lo, hi = log_range(f, settings, log_ceiling)
    h = math.log(lam)
    windows = log_windows(lo, hi - h, settings.windows)
    values = per_window(
        _increment(f, h), windows, settings.points_per_decade, settings.max_window_points, np.max
    )
    return math.exp(min(float(np.nanmax(values)), 700.0))


def low_ratio(
    f: EvaluableFunction,
    lam: float,
    settings: EstimatorSettings | None = None,
    log_ceiling: float | None = None,
) -> float:
    """Finite-horizon f_low(lambda): inf of f(lambda x)/f(x) over the tail windows.

    Raises:
        DomainError: If lambda < 1
    """
    if not lam >= 1:
        raise DomainError("lambda", lam, "low_ratio needs lambda >= 1")
    settings = settings or EstimatorSettings()
    lo, hi = log_range(f, settings, log_ceiling)
    h = math.log(lam)
    windows = log_windows(lo, hi - h, settings.windows)
    values = per_window(
        _increment(f, h), windows, settings.points_per_decade, settings.max_window_points, np.min
    )
    return math.exp(max(float(np.nanmin(values)), -700.0))


def _matuszewska(
    f: EvaluableFunction, settings: EstimatorSettings, upper: bool, log_ceiling: float | None
) -> IndexEstimate:
    lo, hi = log_range(f, settings, log_ceiling)
    steps = lambda_steps(lo, hi, settings)
    best: tuple[float, float, TailTrend] | None = None
    for h in steps:
        trend = _windowed(_increment(f, h), lo, hi - h, settings, np.max if upper else np.min)
        proxy = (trend.limsup if upper else trend.liminf) / h
        logger.debug(
            "Increment statistic", index="alpha" if upper else "beta", h=h, proxy=proxy
        )
        if math.isnan(proxy):
            continue
        if best is None or (proxy < best[0] if upper else proxy > best[0]):
            best = (proxy, h, trend)
    if best is None:
        return IndexEstimate(value=math.nan, trend=Trend.UNSTABLE.value)
    proxy, h, trend = best
    scaled = TailTrend(
        trend.kind,
        trend.limit / h,
        trend.liminf / h,
        trend.limsup / h,
        trend.residual / h,
        tuple(v / h for v in trend.values),
    )
    value = snap_extended(proxy, settings.tolerance, scaled)
    if f.nondecreasing and value < 0:
        value = 0.0
    return IndexEstimate(
        value=value,
        window=[math.exp(steps[0]), math.exp(steps[-1])],
        residual=scaled.residual,
        trend=trend.kind.value,
    )


def alpha(
    f: EvaluableFunction,
    settings: EstimatorSettings | None = None,
    log_ceiling: float | None = None,
) -> IndexEstimate:
    """Upper Matuszewska index: inf over lambda of log f^up(lambda)/log lambda."""
    return _matuszewska(f, settings or EstimatorSettings(), True, log_ceiling)


def beta(
    f: EvaluableFunction,
    settings: EstimatorSettings | None = None,
    log_ceiling: float | None = None,
) -> IndexEstimate:
    """Lower Matuszewska index: sup over lambda of log f_low(lambda)/log lambda."""
    return _matuszewska(f, settings or EstimatorSettings(), False, log_ceiling)


def orders(
    f: EvaluableFunction,
    settings: EstimatorSettings | None = None,
    log_ceiling: float | None = None,
) -> tuple[IndexEstimate, IndexEstimate]:
    """Lower and upper order, liminf and limsup of log f(x)/log x."""
    settings = settings or EstimatorSettings()
    lo, hi = log_range(f, settings, log_ceiling)

    def ratio(s: np.ndarray) -> np.ndarray:
        return f.profile(s) / s

    window = [math.exp(min(max(lo, 0.0), 700.0)), math.exp(min(hi, 700.0))]
    low = _windowed(ratio, lo, hi, settings, np.min)
    high = _windowed(ratio, lo, hi, settings, np.max)
    mu = snap_extended(low.liminf, settings.tolerance, low)
    rho = snap_extended(high.limsup, settings.tolerance, high)
    return (
        IndexEstimate(value=mu, window=window, residual=low.residual, trend=low.kind.value),
        IndexEstimate(value=rho, window=window, residual=high.residual, trend=high.kind.value),
    )


def ordering_check(
    a: IndexEstimate,
    b: IndexEstimate,
    mu: IndexEstimate,
    rho: IndexEstimate,
    tolerance: float,
) -> PropertyVerdict:
    """beta <= mu <= rho <= alpha on the raw estimates, each step within ``tolerance``."""
    chain = (("beta", b.value), ("mu", mu.value), ("rho", rho.value), ("alpha", a.value))
    witness = dict(chain)
    if any(math.isnan(value) for _, value in chain):
        return inconclusive("index_order", "an index is undetermined", **witness)
    for (low_name, low), (high_name, high) in itertools.pairwise(chain):
        if low > high + tolerance:
            return fails("index_order", f"{low_name} exceeds {high_name}", **witness)
    return holds("index_order", **witness)


def indices(
    f: EvaluableFunction,
    settings: EstimatorSettings | None = None,
    log_ceiling: float | None = None,
    with_gamma_check: bool = True,
) -> IndexReport:
    """All four indices of f, with gamma = 1/alpha and gamma_bar = 1/beta."""
    settings = settings or EstimatorSettings()
    lo, hi = log_range(f, settings, log_ceiling)
    a = alpha(f, settings, log_ceiling)
    b = beta(f, settings, log_ceiling)
    mu, rho = orders(f, settings, log_ceiling)
    order = None
    if f.nondecreasing:
        order = ordering_check(a, b, mu, rho, 2 * settings.tolerance)
        if order.fails:
            logger.warning("Index estimates out of order", name=f.name, **order.witness)
    check = None
    if with_gamma_check and f.nondecreasing:
        check = gamma_check(f, settings, log_ceiling, estimate=reciprocal(a.value))
    report = IndexReport(
        name=f.name,
        alpha=a,
        beta=b,
        mu=mu,
        rho=rho,
        gamma=reciprocal(a.value),
        gamma_bar=reciprocal(b.value),
        window=[math.exp(min(max(lo, 0.0), 700.0)), math.exp(min(hi, 700.0))],
        residual=max(e.residual for e in (a, b, mu, rho)),
        gamma_check=check,
        ordering=order,
    )
    logger.info(
        "Estimated indices",
        name=f.name,
        alpha=a.value,
        beta=b.value,
        mu=mu.value,
        rho=rho.value,
    )
    return report


def gamma(
    sigma: EvaluableFunction,
    settings: EstimatorSettings | None = None,
    log_ceiling: float | None = None,
) -> float:
    """gamma(sigma) = 1/alpha(sigma), infinite exactly when alpha vanishes."""
    return reciprocal(alpha(sigma, settings, log_ceiling).value)


def gamma_bar(
    sigma: EvaluableFunction,
    settings: EstimatorSettings | None = None,
    log_ceiling: float | None = None,
) -> float:
    """gamma_bar(sigma) = 1/beta(sigma)."""
    return reciprocal(beta(sigma, settings, log_ceiling).value)


def _satisfies_p_gamma(
    sigma: EvaluableFunction,
    g: float,
    lo: float,
    hi: float,
    settings: EstimatorSettings,
) -> bool | None:
    """Whether some K = 2^k gives limsup sigma(K^g t)/sigma(t) < K; None if untestable."""
    span = hi - max(lo, 0.0)
    tested = False
    for k in range(1, settings.k_search_exponents + 1):
        h = k * LOG2
        if g * h > span / 2:
            break
        tested = True
        trend = _windowed(_increment(sigma, g * h), lo, hi - g * h, settings, np.max)
        if trend.limsup < h:
            return True
    return False if tested else None


def gamma_check(
    sigma: EvaluableFunction,
    settings: EstimatorSettings | None = None,
    log_ceiling: float | None = None,
    estimate: float | None = None,
) -> PropertyVerdict:
    """Cross-check gamma = 1/alpha with a direct search over the property P_gamma.

    P_gamma holds for every gamma below gamma(sigma) and for none above, so the
    grid is scanned upwards until the first failure.
    """
    settings = settings or EstimatorSettings()
    lo, hi = log_range(sigma, settings, log_ceiling)
    if estimate is None:
        estimate = gamma(sigma, settings, log_ceiling)
    last_pass, first_fail = 0.0, math.inf
    for g in GAMMA_GRID:
        outcome = _satisfies_p_gamma(sigma, g, lo, hi, settings)
        if outcome is None:
            break
        if not outcome:
            first_fail = g
            break
        last_pass = g
    slack = 2 * settings.tolerance
    witness = {"estimate": estimate, "grid_pass": last_pass, "grid_fail": first_fail}
    if math.isnan(estimate):
        return inconclusive("gamma_check", "no gamma estimate", **witness)
    lower = last_pass * (1 - slack) - settings.tolerance
    upper = first_fail * (1 + slack) + settings.tolerance
    if lower <= estimate <= upper:
        return holds("gamma_check", **witness)
    return fails("gamma_check", "P_gamma search disagrees with 1/alpha", **witness)


def as_quotients(a: QuotientSequence | WeightSequence | ArrayLike) -> QuotientSequence:
    """Coerce a weight sequence, quotient sequence or positive array into quotients."""
    if isinstance(a, QuotientSequence):
        return a
    if isinstance(a, WeightSequence):
        return quotients(a)
    values = np.asarray(a, dtype=float)
    if np.any(values <= 0):
        raise DomainError("a", float(np.min(values)), "sequence entries must be positive")
    return QuotientSequence(log_m=np.log(values), name="sequence")


def seq_indices(
    a: QuotientSequence | WeightSequence | ArrayLike,
    settings: EstimatorSettings | None = None,
    shifted: bool = False,
) -> IndexReport:
    """Indices of a positive sequence through its step function f(x) = a_{floor(x)-1}.

    A WeightSequence is analysed through its quotients m.
    """
    seq = as_quotients(a)
    return indices(step_embedding(seq, shifted=shifted), settings, with_gamma_check=False)


def gamma_M(M: WeightSequence, settings: EstimatorSettings | None = None) -> float:
    """gamma(M) = beta(m)."""
    return seq_indices(M, settings).beta.value


def omega_M_index(M: WeightSequence, settings: EstimatorSettings | None = None) -> float:
    """omega(M) = mu(m)."""
    return seq_indices(M, settings).mu.value


def alpha_at_zero(
    h: EvaluableFunction, settings: EstimatorSettings | None = None
) -> IndexEstimate:
    """Upper index at the origin: alpha^0(h) = -beta(h^iota)."""
    b = beta(iota(h), settings)
    return b.model_copy(update={"value": -b.value})


def beta_at_zero(
    h: EvaluableFunction, settings: EstimatorSettings | None = None
) -> IndexEstimate:
    """Lower index at the origin: beta^0(h) = -alpha(h^iota)."""
    a = alpha(iota(h), settings)
    return a.model_copy(update={"value": -a.value})


def exponent_of_convergence(
    a: QuotientSequence | WeightSequence,
    r: float = 1.0,
    settings: EstimatorSettings | None = None,
) -> IndexEstimate:
    """sup{mu > -r : sum ((k+1)^r m_k)^(-1/(mu+r)) converges}.

    Computed on the integers from the limsup of log k / log x_k for the
    nondecreasing sequence x_k = (k+1)^r m_k, whose reciprocal is the
    convergence exponent of sum x_k^(-lambda).
    """
    settings = settings or EstimatorSettings()
    seq = as_quotients(a)
    hi = math.log(max(min(seq.top, settings.xmax), 2.0))
    windows = log_windows(0.0, hi, settings.windows)
    values = np.empty(len(windows))
    for i, (w_lo, w_hi) in enumerate(windows):
        grid = window_grid(w_lo, w_hi, settings.points_per_decade, settings.max_window_points)
        k = np.unique(np.floor(np.exp(grid)))
        k = k[k >= 2]
        log_x = r * np.log1p(k) + seq.at(k)
        with np.errstate(divide="ignore", invalid="ignore"):
            values[i] = float(np.max(np.where(log_x > 0, np.log(k) / log_x, math.inf)))
    trend = classify_tail(values)
    value = snap_extended(reciprocal(trend.limsup) - r, settings.tolerance)
    return IndexEstimate(
        value=value,
        window=[math.exp(windows[0][0]), math.exp(hi)],
        residual=trend.residual,
        trend=trend.kind.value,
    )
