"""Proximate orders admitted by a weight function."""

import math
from collections.abc import Callable

import numpy as np

from growthindex.config.models import EstimatorSettings
from growthindex.core.logging import get_logger
from growthindex.core.tails import (
    Trend,
    bounded_above,
    classify_tail,
    log_windows,
    per_window,
)
from growthindex.core.verdict import (
    PropertyVerdict,
    conjunction,
    fails,
    from_bool,
    holds,
    inconclusive,
)
from growthindex.generators.proximate import ProximateOrder
from growthindex.indices.matuszewska import indices, log_range
from growthindex.weights.function import EvaluableFunction
from growthindex.weights.function_conditions import check_omega

logger = get_logger(__name__)

NONNEGATIVE_POINTS = 1024


def _windows(
    order: ProximateOrder, sigma: EvaluableFunction, settings: EstimatorSettings
) -> tuple[float, float, list[tuple[float, float]]]:
    lo, hi = log_range(sigma, settings)
    lo = max(lo, math.log(max(order.start, 1.0)))
    return lo, hi, log_windows(lo, hi, settings.windows)


def _per_window(
    statistic: Callable[[np.ndarray], np.ndarray],
    windows: list[tuple[float, float]],
    settings: EstimatorSettings,
    reducer: Callable[[np.ndarray], float],
) -> np.ndarray:
    return per_window(
        statistic, windows, settings.points_per_decade, settings.max_window_points, reducer
    )


def check_nonnegative(
    order: ProximateOrder, lo: float, hi: float
) -> PropertyVerdict:
    """(B): rho(t) >= 0 on a log grid."""
    t = np.exp(np.linspace(lo, hi, NONNEGATIVE_POINTS))
    values = order.value(t)
    worst = int(np.argmin(values))
    if values[worst] >= 0:
        return holds("prox_B", min=float(values[worst]))
    return fails("prox_B", "rho(t) < 0", t=float(t[worst]), value=float(values[worst]))


def _vanishes(values: np.ndarray, tolerance: float) -> bool | None:
    """Whether a nonnegative per-window statistic tends to 0.

    A negative extrapolated limit of a decaying statistic counts as vanishing.
    """
    trend = classify_tail(values)
    if trend.kind is Trend.DIVERGING:
        return trend.limit < 0
    if trend.settled:
        return trend.limit <= tolerance
    return None


def check_limit(
    order: ProximateOrder,
    windows: list[tuple[float, float]],
    settings: EstimatorSettings,
) -> PropertyVerdict:
    """(C): rho(t) tends to the claimed limit."""

    def distance(s: np.ndarray) -> np.ndarray:
        return np.abs(order.value(np.exp(s)) - order.limit)

    values = _per_window(distance, windows, settings, np.max)
    witness = {"claimed": order.limit, **classify_tail(values).as_witness()}
    return from_bool(
        "prox_C", _vanishes(values, settings.tolerance), "distance to the limit", **witness
    )


def check_derivative(
    order: ProximateOrder,
    windows: list[tuple[float, float]],
    settings: EstimatorSettings,
) -> PropertyVerdict:
    """(D): t rho'(t) log t tends to 0."""

    def size(s: np.ndarray) -> np.ndarray:
        return np.abs(order.condition_d(np.exp(s)))

    values = _per_window(size, windows, settings, np.max)
    return from_bool(
        "prox_D",
        _vanishes(values, settings.tolerance),
        "t rho'(t) log t",
        **classify_tail(values).as_witness(),
    )


def check_admission(
    order: ProximateOrder,
    sigma: EvaluableFunction,
    windows: list[tuple[float, float]],
    settings: EstimatorSettings,
) -> PropertyVerdict:
    """A <= sigma(t)/t^rho(t) <= B on the tail."""

    def log_ratio(s: np.ndarray) -> np.ndarray:
        return sigma.profile(s) - order.log_V(np.exp(s))

    upper = bounded_above(_per_window(log_ratio, windows, settings, np.max))
    lower = bounded_above(_per_window(lambda s: -log_ratio(s), windows, settings, np.max))
    witness = {"upper_bounded": upper, "lower_bounded": lower}
    if upper is False or lower is False:
        return fails("prox_admission", "sigma/t^rho(t) is not bounded above and below", **witness)
    if upper and lower:
        return holds("prox_admission", **witness)
    return inconclusive("prox_admission", "ratio trend not settled", **witness)


def proximate_order_check(
    order: ProximateOrder, sigma: EvaluableFunction, settings: EstimatorSettings | None = None
) -> PropertyVerdict:
    """Whether sigma admits the proximate order rho(t).

    Continuity and piecewise differentiability are taken from the closed
    form. When sigma admits rho(t) with limit rho > 0, the four indices of
    sigma must equal rho and (om1), (om6) must hold.
    """
    settings = settings or EstimatorSettings()
    lo, hi, windows = _windows(order, sigma, settings)
    parts = [
        holds("prox_A", "closed-form derivative"),
        check_nonnegative(order, lo, hi),
        check_limit(order, windows, settings),
        check_derivative(order, windows, settings),
        check_admission(order, sigma, windows, settings),
    ]
    admits = conjunction("proximate_order", parts)
    witness = dict(admits.witness)
    if not admits.holds or order.limit == 0:
        logger.debug("Checked proximate order", order=order.name, status=admits.status.value)
        return admits.model_copy(update={"witness": witness})

    report = indices(sigma, settings, with_gamma_check=False)
    estimates = {
        "alpha": report.alpha.value,
        "beta": report.beta.value,
        "mu": report.mu.value,
        "rho": report.rho.value,
    }
    witness["indices"] = estimates
    tol = 2 * settings.tolerance
    off = {k: v for k, v in estimates.items() if not abs(v - order.limit) <= tol}
    conditions = [check_omega(sigma, "om1", settings), check_omega(sigma, "om6", settings)]
    witness.update({v.id: v.status.value for v in conditions})
    if off:
        return fails(
            "proximate_order", "an index differs from the limit order", off=off, **witness
        )
    if any(v.fails for v in conditions):
        return fails("proximate_order", "(om1) or (om6) fails", **witness)
    if not all(v.holds for v in conditions):
        return inconclusive("proximate_order", "(om1) or (om6) is undecided", **witness)
    logger.debug("Checked proximate order", order=order.name, status="holds")
    return holds("proximate_order", **witness)
