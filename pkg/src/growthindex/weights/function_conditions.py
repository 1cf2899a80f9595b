"""Growth and regularity conditions (om1)-(om7), (om_nq), (om_snq) for weight functions.

O(.) conditions bound a log-ratio over the tail windows; o(.) conditions
require the log-ratio to diverge to -inf. Constant searches run over
H = 2^k as long as the trusted range can resolve the dilation.
"""

import math
from collections.abc import Callable

import numpy as np
from scipy import integrate

from growthindex.config.models import EstimatorSettings
from growthindex.core.errors import DomainError
from growthindex.core.logging import get_logger
from growthindex.core.tails import (
    LN10,
    Trend,
    bounded_above,
    classify_tail,
    log_windows,
    window_grid,
)
from growthindex.core.verdict import PropertyVerdict, fails, holds, inconclusive
from growthindex.indices.battery import integral_growth_check
from growthindex.indices.matuszewska import LAMBDA_RESOLUTION, LOG2, log_range, orders
from growthindex.weights.function import EvaluableFunction
from growthindex.weights.sequence_conditions import BAND_RATIO, bounded_verdict

logger = get_logger(__name__)

type Statistic = Callable[[np.ndarray], np.ndarray]

OMEGA_CONDITIONS = ("om1", "om2", "om3", "om4", "om5", "om6", "om7", "om_nq", "om_snq")

CONVEXITY_SLACK = 1e-9
CONVEXITY_FLOOR = -10.0
GRID_LIMIT = 16384
OM7_EXPONENTS = (0, 1, 2, 4, 8)
QUAD_LIMIT = 200


def _window_maxima(
    statistic: Statistic, windows: list[tuple[float, float]], settings: EstimatorSettings
) -> tuple[np.ndarray, float, float]:
    """Per-window max of a log-grid statistic, the argument of the overall max and its value."""
    maxima = np.empty(len(windows))
    worst_t, worst = 0.0, -math.inf
    for i, (lo, hi) in enumerate(windows):
        s = window_grid(lo, hi, settings.points_per_decade, settings.max_window_points)
        v = np.asarray(statistic(s), dtype=float)
        v = np.where(np.isnan(v), -math.inf, v)
        j = int(np.argmax(v))
        maxima[i] = v[j]
        if v[j] > worst:
            worst_t, worst = float(np.exp(s[j])), float(v[j])
    return maxima, worst_t, worst


def _big_o(
    condition_id: str,
    statistic: Statistic,
    windows: list[tuple[float, float]],
    settings: EstimatorSettings,
) -> PropertyVerdict:
    maxima, worst_t, worst = _window_maxima(statistic, windows, settings)
    verdict = bounded_verdict(condition_id, maxima, worst_t, worst, "C")
    if verdict.fails:
        witness = dict(verdict.witness)
        witness["t"] = witness.pop("p", worst_t)
        return fails(condition_id, verdict.message, **witness)
    return verdict


def _little_o(
    condition_id: str,
    statistic: Statistic,
    windows: list[tuple[float, float]],
    settings: EstimatorSettings,
) -> PropertyVerdict:
    """The log-ratio tends to -inf over the tail windows."""
    maxima, worst_t, _ = _window_maxima(statistic, windows, settings)
    trend = classify_tail(maxima)
    witness = trend.as_witness()
    if trend.kind is Trend.DIVERGING and trend.limit < 0:
        return holds(condition_id, **witness)
    if trend.kind is Trend.DIVERGING or trend.settled:
        return fails(condition_id, "the ratio does not vanish", t=worst_t, **witness)
    return inconclusive(condition_id, "the ratio oscillates", **witness)


def _dilations(lo: float, hi: float, settings: EstimatorSettings) -> list[int]:
    span = hi - max(lo, 0.0)
    limit = span / LAMBDA_RESOLUTION
    exponents = [k for k in range(1, settings.constant_search_exponents + 1) if k * LOG2 <= limit]
    return exponents or [1]


def check_om1(sigma: EvaluableFunction, settings: EstimatorSettings) -> PropertyVerdict:
    """(om1): sigma(2t) = O(sigma(t))."""
    lo, hi = log_range(sigma, settings)
    windows = log_windows(lo, hi - LOG2, settings.windows)
    return _big_o("om1", lambda s: sigma.profile(s + LOG2) - sigma.profile(s), windows, settings)


def check_om2(sigma: EvaluableFunction, settings: EstimatorSettings) -> PropertyVerdict:
    """(om2): sigma(t) = O(t)."""
    lo, hi = log_range(sigma, settings)
    windows = log_windows(lo, hi, settings.windows)
    return _big_o("om2", lambda s: sigma.profile(s) - s, windows, settings)


def check_om3(sigma: EvaluableFunction, settings: EstimatorSettings) -> PropertyVerdict:
    """(om3): log t = o(sigma(t)); oscillating steps are left inconclusive."""
    lo, hi = log_range(sigma, settings)
    windows = log_windows(max(lo, 1.0), hi, settings.windows)
    return _little_o("om3", lambda s: np.log(s) - sigma.profile(s), windows, settings)


def check_om4(sigma: EvaluableFunction, settings: EstimatorSettings) -> PropertyVerdict:
    """(om4): x -> sigma(e^x) is convex, by midpoint tests on a uniform grid."""
    if sigma.is_step:
        return inconclusive("om4", "convexity is not tested on step functions")
    lo = max(sigma.log_floor, CONVEXITY_FLOOR)
    hi = min(sigma.log_ceiling, settings.log_xmax)
    step = LN10 / settings.points_per_decade
    n = int(np.clip(math.ceil((hi - lo) / step) + 1, 64, GRID_LIMIT))
    x = np.linspace(lo, hi, n)
    phi = sigma.profile(x)
    left, mid, right = phi[:-2], phi[1:-1], phi[2:]
    with np.errstate(invalid="ignore"):
        scale = np.maximum(np.maximum(left, mid), right)
        scale = np.where(np.isneginf(scale), 0.0, scale)
        second = np.exp(left - scale) + np.exp(right - scale) - 2.0 * np.exp(mid - scale)
    bad = second < -CONVEXITY_SLACK
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0]) + 1
        return fails("om4", "midpoint convexity fails", t=float(np.exp(x[i])), defect=second[i - 1])
    return holds("om4", points=n, step=float(x[1] - x[0]))


def check_om5(sigma: EvaluableFunction, settings: EstimatorSettings) -> PropertyVerdict:
    """(om5): sigma(t) = o(t)."""
    lo, hi = log_range(sigma, settings)
    windows = log_windows(lo, hi, settings.windows)
    return _little_o("om5", lambda s: sigma.profile(s) - s, windows, settings)


def check_om6(sigma: EvaluableFunction, settings: EstimatorSettings) -> PropertyVerdict:
    """(om6): 2 sigma(t) <= sigma(Ht) + H for some H.

    For unbounded sigma this amounts to liminf sigma(Ht)/sigma(t) > 2 for a
    large enough H. Beyond the resolvable dilations H is extrapolated from
    the growth rate of the largest one; a rate below tolerance/2 means the
    lower index is zero and (om6) fails.
    """
    lo, hi = log_range(sigma, settings)
    margin = settings.tolerance / 2
    proxies: dict[int, float] = {}
    last_t = 0.0
    for k in _dilations(lo, hi, settings):
        h = k * LOG2
        windows = log_windows(lo, hi - h, settings.windows)

        def shrink(s: np.ndarray, h: float = h) -> np.ndarray:
            return sigma.profile(s) - sigma.profile(s + h)

        maxima, last_t, _ = _window_maxima(shrink, windows, settings)
        liminf = -classify_tail(maxima).limsup
        proxies[2**k] = liminf
        if liminf > LOG2 + margin:
            return holds("om6", H=2**k, log_ratio=liminf)
    largest = max(proxies)
    rate = proxies[largest] / math.log(largest)
    witness = {"log_ratios": proxies, "rate": rate}
    if math.isnan(rate):
        return inconclusive("om6", "no usable dilation", **witness)
    if rate < margin:
        return fails("om6", "dilations do not double sigma", t=last_t, **witness)
    exponent = math.ceil((LOG2 + margin) / (rate * LOG2))
    return holds("om6", "H extrapolated from the growth rate", H=2.0**exponent, **witness)


def check_om7(sigma: EvaluableFunction, settings: EstimatorSettings) -> PropertyVerdict:
    """(om7): sigma(t^2) <= C sigma(Ht) + C for some H, C."""
    lo, hi = log_range(sigma, settings)
    base = max(lo, 0.0)
    outcomes: dict[int, bool | None] = {}
    last_t = 0.0
    for k in OM7_EXPONENTS:
        h = k * LOG2
        if not h < (hi - 2.0 * base) / 4.0:
            break
        windows = log_windows(lo, hi / 2.0, settings.windows)

        def excess(s: np.ndarray, h: float = h) -> np.ndarray:
            return sigma.profile(2.0 * s) - np.logaddexp(sigma.profile(s + h), 0.0)

        maxima, last_t, worst = _window_maxima(excess, windows, settings)
        outcomes[2**k] = bounded_above(maxima)
        if outcomes[2**k]:
            return holds("om7", H=2**k, C=math.exp(min(max(worst, 0.0), 700.0)))
    witness = {"bounded": outcomes}
    if outcomes and all(v is False for v in outcomes.values()):
        return fails("om7", "sigma(t^2)/sigma(Ht) diverges", t=last_t, **witness)
    return inconclusive("om7", "no H settles the bound", **witness)


def _log_band(sigma: EvaluableFunction, lo: float, hi: float, settings: EstimatorSettings) -> float:
    """log of the integral of sigma(t)/t^2 over [e^lo, e^hi]."""
    nodes = np.linspace(lo, hi, 33)
    values = sigma.profile(nodes) - nodes
    finite = values[np.isfinite(values)]
    if not finite.size:
        return -math.inf
    ref = float(np.max(finite))

    def integrand(s: float) -> float:
        return math.exp(min(float(sigma.profile(np.array([s]))[0]) - s - ref, 700.0))

    value, _ = integrate.quad(
        integrand, lo, hi, epsrel=settings.quad_rel_tol, limit=QUAD_LIMIT, points=nodes[1:-1]
    )
    return ref + math.log(value) if value > 0 else -math.inf


def check_om_nq(sigma: EvaluableFunction, settings: EstimatorSettings) -> PropertyVerdict:
    """(om_nq): the integral of sigma(t)/t^2 over [1, inf) converges.

    An upper order below 1 decides it; otherwise the local power of sigma at
    the ceiling, then the ratio of successive octave band integrals, are used.
    """
    lo, hi = log_range(sigma, settings)
    rho = orders(sigma, settings)[1].value
    if rho < 1.0 - settings.tolerance:
        return holds("om_nq", "upper order below 1", rho=rho)
    ends = sigma.profile(np.array([hi - 1.0, hi]))
    kappa = float(ends[1] - ends[0])
    if kappa < 1.0 - settings.tolerance:
        return holds("om_nq", "summable local power", rho=rho, slope=kappa)
    last = int(math.floor(hi / LOG2))
    first = max(last - settings.windows, int(math.ceil(max(lo, 0.0) / LOG2)) + 1)
    band_logs = np.array(
        [_log_band(sigma, k * LOG2, (k + 1) * LOG2, settings) for k in range(first, last)]
    )
    ratios = np.exp(np.diff(band_logs)) if band_logs.size >= 2 else np.array([])
    witness = {"rho": rho, "slope": kappa, "band_ratios": ratios}
    if ratios.size and np.all(ratios >= BAND_RATIO):
        return fails("om_nq", "octave band integrals do not decay", t=2.0**last, **witness)
    return inconclusive("om_nq", "integrability not settled at this horizon", **witness)


def check_om_snq(sigma: EvaluableFunction, settings: EstimatorSettings) -> PropertyVerdict:
    """(om_snq): the integral of sigma(yt)/t^2 over t >= 1 is O(sigma(y) + 1)."""
    verdict = integral_growth_check(sigma, 1.0, settings)
    witness = dict(verdict.witness)
    if "p" in witness:
        witness["t"] = witness.pop("p")
    return verdict.model_copy(update={"id": "om_snq", "witness": witness})


CHECKS: dict[str, Callable[[EvaluableFunction, EstimatorSettings], PropertyVerdict]] = {
    "om1": check_om1,
    "om2": check_om2,
    "om3": check_om3,
    "om4": check_om4,
    "om5": check_om5,
    "om6": check_om6,
    "om7": check_om7,
    "om_nq": check_om_nq,
    "om_snq": check_om_snq,
}


def check_omega(
    sigma: EvaluableFunction, cond: str, settings: EstimatorSettings | None = None
) -> PropertyVerdict:
    """Check one growth condition on a weight function.

    Args:
        sigma: The weight function
        cond: One of om1..om7, om_nq, om_snq
        settings: Estimator settings (defaults when omitted)

    Raises:
        DomainError: If the condition is unknown
    """
    settings = settings or EstimatorSettings()
    check = CHECKS.get(cond)
    if check is None:
        raise DomainError("cond", cond, f"expected one of {', '.join(OMEGA_CONDITIONS)}")
    verdict = check(sigma, settings)
    logger.debug("Checked condition", name=sigma.name, condition=cond, status=verdict.status)
    return verdict


def check_all(
    sigma: EvaluableFunction, settings: EstimatorSettings | None = None
) -> list[PropertyVerdict]:
    """Every (om) condition in a fixed order."""
    settings = settings or EstimatorSettings()
    return [check_omega(sigma, cond, settings) for cond in OMEGA_CONDITIONS]


def equivalent(
    sigma: EvaluableFunction, tau: EvaluableFunction, settings: EstimatorSettings | None = None
) -> PropertyVerdict:
    """sigma ~ tau: C^-1 tau - C <= sigma <= C tau + C for some C.

    C = max(1, sup sigma/(tau+1), sup tau/(sigma+1)) over the common grid
    suffices; the verdict follows the tail trend of the larger of the two
    log-ratios.
    """
    settings = settings or EstimatorSettings()
    lo = max(sigma.tail_start, tau.tail_start)
    hi = min(sigma.log_ceiling, tau.log_ceiling, settings.log_xmax)
    if not hi > max(lo, 0.0):
        return inconclusive("equiv_sim", "no common trusted range")

    def ratio(s: np.ndarray) -> np.ndarray:
        a, b = sigma.profile(s), tau.profile(s)
        with np.errstate(invalid="ignore"):
            return np.maximum(a - np.logaddexp(b, 0.0), b - np.logaddexp(a, 0.0))

    step = LN10 / settings.points_per_decade
    n = int(np.clip(math.ceil((hi - lo) / step) + 1, 64, GRID_LIMIT))
    grid = ratio(np.linspace(lo, hi, n))
    C = math.exp(min(max(float(np.nanmax(grid)), 0.0), 700.0))
    windows = log_windows(lo, hi, settings.windows)
    maxima, worst_t, worst = _window_maxima(ratio, windows, settings)
    verdict = bounded_verdict("equiv_sim", maxima, worst_t, worst, "tail_C")
    witness = {**verdict.witness, "C": C}
    if verdict.fails:
        witness["t"] = witness.pop("p", worst_t)
    return verdict.model_copy(update={"witness": witness})
