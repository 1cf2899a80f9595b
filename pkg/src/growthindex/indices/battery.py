"""Equivalence batteries for the upper and lower Matuszewska indices.

A battery evaluates every numerically checkable condition of one
characterization theorem at a fixed parameter: integral and sum bounds,
ratio searches over k = 2^j, almost-monotone witnesses, the theta form and
the index comparison. The conditions of one battery are equivalent, so two
definite verdicts that disagree point at an estimator problem.

Condition ids are the roman numerals the conditions carry in the
characterization theorems.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field

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
from growthindex.core.verdict import (
    PropertyVerdict,
    Status,
    contradicts,
    fails,
    holds,
    inconclusive,
)
from growthindex.indices.matuszewska import (
    LAMBDA_RESOLUTION,
    LOG2,
    alpha,
    as_quotients,
    beta,
    log_range,
    reciprocal,
    seq_indices,
)
from growthindex.indices.sums import SLOPE_SPAN, LogSeries, integer_points
from growthindex.weights.function import EvaluableFunction
from growthindex.weights.sequence import (
    QuotientSequence,
    WeightSequence,
    gevrey_multiply_quotients,
)
from growthindex.weights.sequence_conditions import (
    POINTS_PER_WINDOW,
    bounded_verdict,
    windowed_max,
)

logger = get_logger(__name__)

TheoremId = Literal["alpha_fn", "beta_fn", "alpha_seq", "beta_seq"]
type Subject = EvaluableFunction | QuotientSequence | WeightSequence
type LogTerm = Callable[[np.ndarray], np.ndarray]

THEOREMS: tuple[str, ...] = ("alpha_fn", "beta_fn", "alpha_seq", "beta_seq")

DENSE_PREFIX = 4096
DENSE_POINTS = 4096
GRID_LIMIT = 16384
THETA_SLACK = 1e-12
TAIL_REACH = 16.0
TABLE_REACH = 4.0


class BatteryReport(BaseModel):
    """Verdicts of one characterization theorem at one parameter.

    ``consistent`` is true when every condition has the same status;
    ``contradictions`` lists pairs of definite verdicts that disagree.
    """

    model_config = {"frozen": True}

    theorem_id: TheoremId
    parameter: float
    subject: str = ""
    conditions: list[PropertyVerdict]
    consistent: bool
    contradictions: list[tuple[str, str]] = Field(default_factory=list)

    def verdict(self, condition_id: str) -> PropertyVerdict:
        """The verdict of one condition.

        Raises:
            KeyError: If the battery has no such condition
        """
        for v in self.conditions:
            if v.id == condition_id:
                return v
        raise KeyError(condition_id)

    @property
    def statuses(self) -> dict[str, Status]:
        return {v.id: v.status for v in self.conditions}


@dataclass(frozen=True)
class _Tail:
    """Log values of a function or sequence on its trusted tail.

    Attributes:
        log_value: x -> log sigma(x) or log m_x at (integer-valued) arguments
        profile: s -> log value at e^s, used on uniform log grids
        lo: Log of the first argument tail statistics use
        hi: Log of the last trusted argument
        first: First integer at which the value is positive
        table_only: No evaluator beyond a finite table
        discrete: Defined on the integers only
        name: Label used in reports
    """

    log_value: LogTerm
    profile: LogTerm
    lo: float
    hi: float
    first: int
    table_only: bool
    discrete: bool
    name: str

    @property
    def top(self) -> float:
        return math.exp(self.hi)

    @property
    def span(self) -> float:
        return self.hi - max(self.lo, 0.0)

    def scales(self, settings: EstimatorSettings) -> list[int]:
        """Exponents j of k = 2^j whose ratios the tail can resolve."""
        limit = self.span / LAMBDA_RESOLUTION
        exponents = [
            j for j in range(1, settings.k_search_exponents + 1) if j * LOG2 <= limit
        ]
        if not exponents and LOG2 < self.span / 2:
            exponents = [1]
        return exponents


def _function_tail(f: EvaluableFunction, settings: EstimatorSettings) -> _Tail:
    lo, hi = log_range(f, settings)

    def log_value(x: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return f.profile(np.log(np.asarray(x, dtype=float)))

    return _Tail(
        log_value=log_value,
        profile=f.profile,
        lo=lo,
        hi=hi,
        first=math.ceil(f.threshold) + 1,
        table_only=False,
        discrete=False,
        name=f.name,
    )


def _sequence_tail(a: QuotientSequence, settings: EstimatorSettings) -> _Tail:
    def profile(s: np.ndarray) -> np.ndarray:
        return a.at(np.floor(np.exp(np.asarray(s, dtype=float))))

    return _Tail(
        log_value=a.at,
        profile=profile,
        lo=0.0,
        hi=min(math.log(max(a.top, 2.0)), settings.log_xmax),
        first=0,
        table_only=a.evaluator is None,
        discrete=True,
        name=a.name,
    )


def _dense_integers(first: int, top: float) -> np.ndarray:
    """All integers up to 4096, then log-spaced integers up to ``top``."""
    head = np.arange(max(first, 1), min(top, DENSE_PREFIX) + 1, dtype=float)
    if top <= DENSE_PREFIX:
        return head
    rest = np.floor(np.geomspace(DENSE_PREFIX, top, DENSE_POINTS))
    return np.unique(np.concatenate((head, rest)))


def _window_extremes(
    statistic: LogTerm,
    windows: list[tuple[float, float]],
    points: Callable[[float, float], np.ndarray],
    upper: bool,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-window max (or min) of a statistic and where it was attained."""
    values = np.empty(len(windows))
    where = np.empty(len(windows))
    for i, (lo, hi) in enumerate(windows):
        x = points(lo, hi)
        v = np.asarray(statistic(x), dtype=float)
        v = np.where(np.isnan(v), -math.inf if upper else math.inf, v)
        j = int(np.argmax(v) if upper else np.argmin(v))
        values[i], where[i] = v[j], x[j]
    return values, where


def _masked_extremes(
    values: np.ndarray, s: np.ndarray, windows: list[tuple[float, float]]
) -> tuple[np.ndarray, float, float]:
    """Per-window max of precomputed values on a log grid, plus the overall argmax."""
    maxima = np.full(len(windows), -math.inf)
    worst_x, worst = math.exp(s[0]), -math.inf
    for i, (lo, hi) in enumerate(windows):
        inside = (s >= lo) & (s <= hi)
        if not np.any(inside):
            continue
        v = np.where(np.isnan(values[inside]), -math.inf, values[inside])
        j = int(np.argmax(v))
        maxima[i] = v[j]
        if v[j] > worst:
            worst_x, worst = float(np.exp(s[inside][j])), float(v[j])
    return maxima, worst_x, worst


def _points(integer: bool, settings: EstimatorSettings) -> Callable[[float, float], np.ndarray]:
    if integer:
        return lambda lo, hi: integer_points(lo, hi, POINTS_PER_WINDOW)
    return lambda lo, hi: np.exp(
        window_grid(lo, hi, settings.points_per_decade, settings.max_window_points)
    )


def _ratio_search(
    condition_id: str,
    tail: _Tail,
    parameter: float,
    upper: bool,
    integer: bool,
    settings: EstimatorSettings,
) -> PropertyVerdict:
    """Some k = 2^j with limsup f(kx)/f(x) < k^a (upper) or liminf > k^b (lower)."""
    scales = tail.scales(settings)
    if not scales:
        return inconclusive(condition_id, "horizon too short", top=tail.top)
    points = _points(integer, settings)
    all_bad = True
    last_where = 0.0
    proxies: dict[int, float] = {}
    for j in scales:
        h = j * LOG2
        k = 2.0**j

        def increment(x: np.ndarray, k: float = k) -> np.ndarray:
            return tail.log_value(k * x) - tail.log_value(x)

        windows = log_windows(tail.lo, tail.hi - h, settings.windows)
        values, where = _window_extremes(increment, windows, points, upper)
        trend = classify_tail(values)
        proxy = trend.limsup if upper else trend.liminf
        proxies[int(k)] = math.exp(min(max(proxy, -700.0), 700.0))
        margin = settings.tolerance / 2 * h
        bound = parameter * h
        if upper:
            good, bad = proxy < bound - margin, proxy > bound + margin
        else:
            good, bad = proxy > bound + margin, proxy < bound - margin
        if good:
            return holds(condition_id, k=int(k), ratio=proxies[int(k)], bound=k**parameter)
        all_bad &= bad
        last_where = float(where[-1])
    witness = {"ratios": proxies, "bound_exponent": parameter}
    if all_bad:
        return fails(condition_id, "no k beats k^parameter", p=int(last_where), **witness)
    return inconclusive(condition_id, "ratio search undecided", **witness)


def _scale_limit(
    condition_id: str,
    tail: _Tail,
    parameter: float,
    upper: bool,
    integer: bool,
    settings: EstimatorSettings,
) -> PropertyVerdict:
    """lim_k limsup f(kx)/(k^a f(x)) = 0 (upper) or lim_k liminf f(kx)/(k^b f(x)) = inf."""
    scales = tail.scales(settings)
    points = _points(integer, settings)
    logs: list[float] = []
    for j in scales:
        h = j * LOG2
        k = 2.0**j

        def increment(x: np.ndarray, k: float = k) -> np.ndarray:
            return tail.log_value(k * x) - tail.log_value(x)

        windows = log_windows(tail.lo, tail.hi - h, settings.windows)
        values, _ = _window_extremes(increment, windows, points, upper)
        trend = classify_tail(values)
        logs.append((trend.limsup if upper else trend.liminf) - parameter * h)
    if len(logs) < 3:
        return inconclusive(condition_id, "too few resolvable scales", scales=len(logs))
    trend = classify_tail(logs)
    witness = {"log_ratios": logs, **trend.as_witness()}
    target = -math.inf if upper else math.inf
    if trend.kind is Trend.DIVERGING and trend.limit == target:
        return holds(condition_id, **witness)
    if trend.kind is Trend.DIVERGING or trend.settled:
        k = 2 ** scales[len(logs) - 1]
        return fails(condition_id, "the normalized ratio does not vanish", k=k, p=k, **witness)
    return inconclusive(condition_id, "scale trend is not settled", **witness)


def _theta_condition(
    condition_id: str,
    tail: _Tail,
    parameter: float,
    upper: bool,
    settings: EstimatorSettings,
) -> PropertyVerdict:
    """For theta = settings.theta some k = 2^j bounds every ratio f(kp)/f(p)."""
    theta = settings.theta
    log_theta = math.log(theta)
    first = max(tail.first, 1)
    tested: list[int] = []
    all_bad = True
    last_where = 0.0
    for j in range(1, settings.k_search_exponents + 1):
        k = 2.0**j
        reach = tail.top / k
        if reach < max(first, 2) * 2:
            break
        p = _dense_integers(first, reach)
        h = j * LOG2
        if upper:
            gap = tail.log_value(k * p) - tail.log_value(p) - parameter * h - log_theta
        else:
            gap = tail.log_value(p) - tail.log_value(k * p) + parameter * h - log_theta
        gap = np.where(np.isnan(gap), math.inf, gap)
        tested.append(int(k))
        if float(np.max(gap)) <= THETA_SLACK:
            return holds(condition_id, k=int(k), theta=theta)
        windows = log_windows(math.log(first), math.log(reach), settings.windows)
        last = (p >= math.exp(windows[-1][0])) & (p <= math.exp(windows[-1][1]))
        if np.any(last):
            all_bad &= bool(np.min(gap[last]) > 0)
            last_where = float(p[last][int(np.argmax(gap[last]))])
    witness = {"theta": theta, "k_tested": tested}
    if not tested:
        return inconclusive(condition_id, "horizon too short", **witness)
    if all_bad:
        return fails(condition_id, "no k works in the tail", p=int(last_where), **witness)
    return inconclusive(condition_id, "only the tail fails for some k", **witness)


def _almost_monotone(
    condition_id: str,
    tail: _Tail,
    gammas: list[float],
    decreasing: bool,
    settings: EstimatorSettings,
) -> PropertyVerdict:
    """Some exponent g makes f(x)/x^g almost decreasing (or almost increasing)."""
    if tail.discrete:
        x = _dense_integers(max(tail.first, 1), tail.top)
        v = np.log(x)
        values = tail.log_value(x)
    else:
        v = _log_grid(tail.lo, tail.hi, settings)
        values = tail.profile(v)
    finite = np.isfinite(values)
    v, values = v[finite], values[finite]
    if v.size < 8 or not gammas:
        return inconclusive(condition_id, "no usable samples", gammas=gammas)
    windows = log_windows(tail.lo, tail.hi, settings.windows)
    outcomes: list[bool | None] = []
    worst_x = 0.0
    for g in gammas:
        gv = values - g * v
        if decreasing:
            excess = gv - np.minimum.accumulate(gv)
        else:
            excess = np.maximum.accumulate(gv) - gv
        maxima, worst_x, worst = _masked_extremes(excess, v, windows)
        outcome = bounded_above(maxima)
        if outcome:
            return holds(condition_id, gamma=g, constant=math.exp(min(worst, 700.0)))
        outcomes.append(outcome)
    witness = {"gammas": gammas, "bounded": outcomes}
    if all(o is False for o in outcomes):
        return fails(condition_id, "every exponent drifts", p=int(worst_x), **witness)
    return inconclusive(condition_id, "almost monotonicity not settled", **witness)


def _index_condition(
    condition_id: str,
    value: float,
    parameter: float,
    below: bool,
    settings: EstimatorSettings,
    **witness: object,
) -> PropertyVerdict:
    """Compare an index estimate with the parameter, undecided within tolerance/2."""
    margin = settings.tolerance / 2
    witness = {"estimate": value, "parameter": parameter, **witness}
    if math.isnan(value):
        return inconclusive(condition_id, "no estimate", **witness)
    if below:
        good, bad = value < parameter - margin, value > parameter + margin
    else:
        good, bad = value > parameter + margin, value < parameter - margin
    if good:
        return holds(condition_id, **witness)
    if bad:
        return fails(condition_id, "the index lies on the wrong side", p=0, **witness)
    return inconclusive(condition_id, "the index is within tolerance of the parameter", **witness)


def _sum_condition(
    condition_id: str,
    tail: _Tail,
    log_term: LogTerm,
    start: int,
    log_norm: LogTerm,
    partial: bool,
    settings: EstimatorSettings,
    offset: int = 0,
) -> PropertyVerdict:
    """Bound a partial (or tail) sum by C times a normalizing term at p."""
    series = LogSeries(
        log_term=log_term,
        start=start,
        top=tail.top,
        exact_limit=settings.sum_exact_limit,
        extension=settings.sum_extension,
        rel_tol=settings.quad_rel_tol,
    )
    if partial:
        reach = tail.top
    else:
        reach = tail.top / (TABLE_REACH if tail.table_only else TAIL_REACH)
    if reach < 64:
        return inconclusive(condition_id, "horizon too short", top=tail.top)
    lo = math.log(max(start, tail.first, 1))
    windows = log_windows(lo, math.log(reach), settings.windows)

    def statistic(p: np.ndarray) -> np.ndarray:
        if partial:
            sums = np.array([series.log_partial(float(x)) for x in p])
        else:
            sums = np.array([series.log_tail(float(x) + offset) for x in p])
        return sums - log_norm(p)

    return bounded_verdict(condition_id, *windowed_max(statistic, windows), "C")


def _log_grid(lo: float, hi: float, settings: EstimatorSettings) -> np.ndarray:
    step = LN10 / settings.points_per_decade
    n = int(np.clip(math.ceil((hi - lo) / step) + 1, 64, GRID_LIMIT))
    return np.linspace(lo, hi, n)


def _log_cumulative(F: np.ndarray, s: np.ndarray, from_right: bool) -> np.ndarray:
    """Trapezoid log of the integral of e^F from the left end (or to the right end)."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        segments = np.logaddexp(F[:-1], F[1:]) + np.log(np.diff(s) / 2.0)
        if from_right:
            acc = np.logaddexp.accumulate(segments[::-1])[::-1]
            return np.append(acc, -math.inf)
        return np.concatenate(([-math.inf], np.logaddexp.accumulate(segments)))


def _end_slope(tail: _Tail) -> float:
    ends = tail.profile(np.array([tail.hi - SLOPE_SPAN, tail.hi]))
    return float(ends[1] - ends[0]) / SLOPE_SPAN


def _integral_verdict(
    condition_id: str, tail: _Tail, s: np.ndarray, ratio: np.ndarray, settings: EstimatorSettings
) -> PropertyVerdict:
    windows = log_windows(tail.lo, tail.hi, settings.windows)
    maxima, worst_x, worst = _masked_extremes(ratio, s, windows)
    return bounded_verdict(condition_id, maxima, worst_x, worst, "C")


def _alpha_integral(tail: _Tail, a: float, settings: EstimatorSettings) -> PropertyVerdict:
    """(i): the integral of sigma(yt)/t^(1+a) over t >= 1 is O(sigma(y) + 1)."""
    s = _log_grid(tail.lo, tail.hi, settings)
    phi = tail.profile(s)
    F = phi - a * s
    kappa = _end_slope(tail)
    beyond = F[-1] - math.log(a - kappa) if kappa < a else math.inf
    with np.errstate(invalid="ignore"):
        log_integral = a * s + np.logaddexp(_log_cumulative(F, s, from_right=True), beyond)
        ratio = log_integral - np.logaddexp(phi, 0.0)
    return _integral_verdict("i", tail, s, ratio, settings)


def _alpha_reverse_integral(tail: _Tail, a: float, settings: EstimatorSettings) -> PropertyVerdict:
    """(viii): the integral of t^a/sigma(t) dt/t up to y is O(y^a/sigma(y))."""
    s = _log_grid(tail.lo, tail.hi, settings)
    phi = tail.profile(s)
    keep = np.isfinite(phi)
    s, G = s[keep], a * s[keep] - phi[keep]
    ratio = _log_cumulative(G, s, from_right=False) - G
    return _integral_verdict("viii", tail, s, ratio, settings)


def _beta_integral(tail: _Tail, b: float, settings: EstimatorSettings) -> PropertyVerdict:
    """(i): the integral of sigma(t)/t^(b+1) over [1, y] is O(sigma(y)/y^b)."""
    s = _log_grid(0.0, tail.hi, settings)
    F = tail.profile(s) - b * s
    with np.errstate(invalid="ignore"):
        ratio = _log_cumulative(F, s, from_right=False) - F
    return _integral_verdict("i", tail, s, ratio, settings)


def _beta_tail_integral(tail: _Tail, b: float, settings: EstimatorSettings) -> PropertyVerdict:
    """(vi): y^-b times the integral of t^(b-1)/sigma(t) beyond y is O(1/sigma(y))."""
    s = _log_grid(tail.lo, tail.hi, settings)
    phi = tail.profile(s)
    keep = np.isfinite(phi)
    s, G = s[keep], b * s[keep] - phi[keep]
    kappa = _end_slope(tail)
    beyond = G[-1] - math.log(kappa - b) if kappa > b else math.inf
    with np.errstate(invalid="ignore"):
        ratio = np.logaddexp(_log_cumulative(G, s, from_right=True), beyond) - G
    return _integral_verdict("vi", tail, s, ratio, settings)


def _companion(
    tail: _Tail, parameter: float, upper: bool, settings: EstimatorSettings
) -> PropertyVerdict:
    """(iii): build h from the running inf (sup) of m_q / q^g and test its doubling ratio.

    For the lower battery h_p = p^g inf_{q>=p} q^-g m_q with g = b + eps; for
    the upper one h_p = (p+1)^g sup_{q>=p} (q+1)^-g m_q with g = a - eps.
    h ~ m is judged with the running extremum taken up to the square of
    each window's end.
    """
    top = tail.top
    if top < 64:
        return inconclusive("iii", "horizon too short", top=top)
    base = _dense_integers(1, top / 2.0)
    points = np.unique(np.concatenate((base, 2.0 * base)))
    log_p = np.log1p(points) if upper else np.log(points)
    log_m = tail.log_value(points)
    at_base = np.searchsorted(points, base)
    at_double = np.searchsorted(points, 2.0 * base)
    bound = parameter * LOG2
    margin = settings.tolerance / 2 * LOG2
    gap_windows = log_windows(0.0, math.log(top) / 2.0, settings.windows)
    last_lo = math.exp(log_windows(0.0, math.log(top / 2.0), settings.windows)[-1][0])
    extremum = np.maximum.accumulate if upper else np.minimum.accumulate
    epsilons = [2.0**-k for k in range(1, settings.epsilon_exponents + 1)]
    if upper:
        epsilons = [e for e in epsilons if e < parameter]
    all_bad = True
    summary: list[dict[str, object]] = []
    for eps in epsilons:
        g = parameter - eps if upper else parameter + eps
        w = log_m - g * log_p
        gaps: list[float] = []
        for lo, hi in gap_windows:
            n = int(np.searchsorted(points, math.exp(2.0 * hi), side="right"))
            log_h = g * log_p[:n] + extremum(w[:n][::-1])[::-1]
            inside = (points[:n] >= math.exp(lo)) & (points[:n] <= math.exp(hi))
            if np.any(inside):
                gaps.append(float(np.max(np.abs(log_m[:n][inside] - log_h[inside]))))
        close = bounded_above(gaps) if len(gaps) >= 2 else None
        log_h = g * log_p + extremum(w[::-1])[::-1]
        doubling = log_h[at_double] - log_h[at_base]
        in_tail = base >= last_lo
        if upper:
            extreme, tail_extreme = float(np.max(doubling)), float(np.max(doubling[in_tail]))
            good_c, bad_c = extreme < bound, tail_extreme > bound + margin
        else:
            extreme, tail_extreme = float(np.min(doubling)), float(np.min(doubling[in_tail]))
            good_c, bad_c = extreme > bound, tail_extreme < bound - margin
        summary.append({"eps": eps, "similar": close, "doubling": math.exp(extreme)})
        if close and good_c:
            return holds("iii", eps=eps, doubling=math.exp(extreme), bound=2.0**parameter)
        all_bad &= close is False or bad_c
    witness = {"candidates": summary}
    if epsilons and all_bad:
        return fails("iii", "no regularized companion works", p=int(base[-1]), **witness)
    return inconclusive("iii", "companion sequence undecided", **witness)


def _up_gammas(parameter: float, settings: EstimatorSettings) -> list[float]:
    exps = range(1, settings.epsilon_exponents + 1)
    return [parameter - 2.0**-k for k in exps if parameter - 2.0**-k > 0]


def _down_gammas(parameter: float, settings: EstimatorSettings) -> list[float]:
    return [parameter + 2.0**-k for k in range(1, settings.epsilon_exponents + 1)]


def alpha_fn_battery(
    sigma: EvaluableFunction, a: float, settings: EstimatorSettings
) -> list[PropertyVerdict]:
    """Conditions equivalent to alpha(sigma) < a for a weight function."""
    tail = _function_tail(sigma, settings)
    L = tail.log_value
    first = tail.first
    estimate = alpha(sigma, settings).value
    return [
        _alpha_integral(tail, a, settings),
        _scale_limit("iii", tail, a, True, False, settings),
        _ratio_search("iv", tail, a, True, False, settings),
        _index_condition("v", estimate, a, True, settings, gamma=reciprocal(estimate)),
        _index_condition("vi", estimate, a, True, settings),
        _almost_monotone("vii", tail, _up_gammas(a, settings), True, settings),
        _alpha_reverse_integral(tail, a, settings),
        _sum_condition(
            "ix",
            tail,
            lambda k: (a - 1.0) * np.log(k) - L(k),
            first,
            lambda p: a * np.log(p) - L(p),
            True,
            settings,
        ),
        _theta_condition("x", tail, a, True, settings),
        _ratio_search("xi", tail, a, True, True, settings),
        _sum_condition(
            "xii",
            tail,
            lambda k: L(k) - (1.0 + a) * np.log(k),
            max(first - 1, 1),
            lambda p: L(p) - a * np.log(p),
            False,
            settings,
        ),
    ]


def beta_fn_battery(
    sigma: EvaluableFunction, b: float, settings: EstimatorSettings
) -> list[PropertyVerdict]:
    """Conditions equivalent to beta(sigma) > b for a weight function."""
    tail = _function_tail(sigma, settings)
    L = tail.log_value
    estimate = beta(sigma, settings).value
    return [
        _beta_integral(tail, b, settings),
        _scale_limit("ii", tail, b, False, False, settings),
        _ratio_search("iii", tail, b, False, False, settings),
        _index_condition("iv", estimate, b, False, settings),
        _almost_monotone("v", tail, _down_gammas(b, settings), False, settings),
        _beta_tail_integral(tail, b, settings),
        _sum_condition(
            "vii",
            tail,
            lambda k: (b - 1.0) * np.log(k) - L(k),
            tail.first,
            lambda p: b * np.log(p) - L(p),
            False,
            settings,
        ),
        _theta_condition("viii", tail, b, False, settings),
        _ratio_search("ix", tail, b, False, True, settings),
        _sum_condition(
            "x",
            tail,
            lambda k: L(k) - (1.0 + b) * np.log(k),
            1,
            lambda p: L(p) - b * np.log(p),
            True,
            settings,
        ),
    ]


def beta_seq_battery(
    m: QuotientSequence, b: float, settings: EstimatorSettings
) -> list[PropertyVerdict]:
    """Conditions equivalent to gamma(M) = beta(m) > b for a quotient sequence."""
    tail = _sequence_tail(m, settings)
    L = tail.log_value
    lower = seq_indices(m, settings).beta.value
    return [
        _sum_condition(
            "i",
            tail,
            lambda k: (b - 1.0) * np.log1p(k) - L(k),
            0,
            lambda p: b * np.log1p(p) - L(p),
            False,
            settings,
        ),
        _almost_monotone("ii", tail, _down_gammas(b, settings), False, settings),
        _companion(tail, b, False, settings),
        _scale_limit("iv", tail, b, False, True, settings),
        _ratio_search("v", tail, b, False, True, settings),
        _theta_condition("vi", tail, b, False, settings),
        _index_condition("vii", lower, b, False, settings),
        _index_condition("viii", lower, b, False, settings, gamma_M=lower),
        _sum_condition(
            "ix",
            tail,
            lambda k: L(k) - (1.0 + b) * np.log1p(k),
            0,
            lambda p: L(p) - b * np.log1p(p),
            True,
            settings,
        ),
    ]


def alpha_seq_battery(
    m: QuotientSequence, a: float, settings: EstimatorSettings
) -> list[PropertyVerdict]:
    """Conditions equivalent to alpha(m) < a for a quotient sequence."""
    tail = _sequence_tail(m, settings)
    L = tail.log_value
    upper = seq_indices(m, settings).alpha.value
    return [
        _sum_condition(
            "i",
            tail,
            lambda k: (a - 1.0) * np.log1p(k) - L(k),
            0,
            lambda p: a * np.log1p(p) - L(p),
            True,
            settings,
        ),
        _almost_monotone("ii", tail, _up_gammas(a, settings), True, settings),
        _companion(tail, a, True, settings),
        _scale_limit("iv", tail, a, True, True, settings),
        _ratio_search("v", tail, a, True, True, settings),
        _theta_condition("vi", tail, a, True, settings),
        _index_condition("vii", upper, a, True, settings),
        _sum_condition(
            "viii",
            tail,
            lambda k: L(k) - (1.0 + a) * np.log1p(k),
            0,
            lambda p: L(p) - a * np.log1p(p),
            False,
            settings,
            offset=1,
        ),
    ]


def _report(
    theorem_id: TheoremId, parameter: float, name: str, conditions: list[PropertyVerdict]
) -> BatteryReport:
    pairs = [
        (first.id, second.id)
        for i, first in enumerate(conditions)
        for second in conditions[i + 1 :]
        if contradicts(first, second)
    ]
    return BatteryReport(
        theorem_id=theorem_id,
        parameter=parameter,
        subject=name,
        conditions=conditions,
        consistent=len({v.status for v in conditions}) == 1,
        contradictions=pairs,
    )


def battery(
    subject: Subject,
    theorem_id: TheoremId,
    parameter: float,
    settings: EstimatorSettings | None = None,
) -> BatteryReport:
    """Run one characterization battery.

    Args:
        subject: A weight function for the function batteries, a weight or
            quotient sequence for the sequence batteries
        theorem_id: alpha_fn, beta_fn, alpha_seq or beta_seq
        parameter: The tested alpha (> 0) or beta (>= 0)
        settings: Estimator settings (defaults when omitted)

    Raises:
        DomainError: For an unknown theorem, a mismatched subject or a
            parameter outside the theorem's range
    """
    settings = settings or EstimatorSettings()
    if theorem_id not in THEOREMS:
        raise DomainError("theorem_id", theorem_id, f"expected one of {', '.join(THEOREMS)}")
    if theorem_id.startswith("alpha") and not parameter > 0:
        raise DomainError("parameter", parameter, f"{theorem_id} needs alpha > 0")
    if theorem_id.startswith("beta") and not parameter >= 0:
        raise DomainError("parameter", parameter, f"{theorem_id} needs beta >= 0")
    if theorem_id.endswith("_fn"):
        if not isinstance(subject, EvaluableFunction):
            raise DomainError("subject", type(subject).__name__, f"{theorem_id} needs a function")
        run_fn = alpha_fn_battery if theorem_id == "alpha_fn" else beta_fn_battery
        conditions = run_fn(subject, parameter, settings)
    else:
        if isinstance(subject, EvaluableFunction):
            raise DomainError("subject", type(subject).__name__, f"{theorem_id} needs a sequence")
        run_seq = alpha_seq_battery if theorem_id == "alpha_seq" else beta_seq_battery
        conditions = run_seq(as_quotients(subject), parameter, settings)

    for v in conditions:
        logger.debug("Battery condition", theorem=theorem_id, id=v.id, status=v.status.value)
    report = _report(theorem_id, parameter, subject.name, conditions)
    for first, second in report.contradictions:
        logger.warning(
            "Battery verdicts contradict",
            theorem=theorem_id,
            parameter=parameter,
            first=first,
            second=second,
        )
    logger.info(
        "Ran battery",
        theorem=theorem_id,
        parameter=parameter,
        subject=report.subject,
        consistent=report.consistent,
    )
    return report


def lift_check(
    m: QuotientSequence | WeightSequence,
    theorem_id: Literal["alpha_seq", "beta_seq"],
    parameter: float,
    r: float = 1.0,
    settings: EstimatorSettings | None = None,
) -> PropertyVerdict:
    """Compare a sequence battery on (m, b) with the lifted ((p+1)^r m_p) at b + r.

    Holds when no condition receives definite opposite verdicts on the two sides.
    """
    settings = settings or EstimatorSettings()
    quotients = as_quotients(m)
    lifted = gevrey_multiply_quotients(quotients, r)
    plain = battery(quotients, theorem_id, parameter, settings)
    shifted = battery(lifted, theorem_id, parameter + r, settings)
    pairs = {
        v.id: {"plain": v.status.value, "lifted": w.status.value}
        for v, w in zip(plain.conditions, shifted.conditions, strict=True)
    }
    clashes = [
        v.id
        for v, w in zip(plain.conditions, shifted.conditions, strict=True)
        if contradicts(v, w)
    ]
    if clashes:
        return fails("lift", "lifting changes a definite verdict", conditions=pairs, clash=clashes)
    return holds("lift", r=r, conditions=pairs)


def integral_growth_check(
    sigma: EvaluableFunction, a: float = 1.0, settings: EstimatorSettings | None = None
) -> PropertyVerdict:
    """The integral of sigma(yt)/t^(1+a) over t >= 1 is O(sigma(y) + 1).

    With a = 1 this is the strong non-quasianalyticity of a weight function.
    """
    settings = settings or EstimatorSettings()
    return _alpha_integral(_function_tail(sigma, settings), a, settings)
