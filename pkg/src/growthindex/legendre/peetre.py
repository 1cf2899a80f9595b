"""Peetre-type equivalence criteria and the gamma-shift under Legendre conjugation."""

import math
from typing import Literal

import numpy as np

from growthindex.config.models import EstimatorSettings
from growthindex.core.errors import DomainError
from growthindex.core.logging import get_logger
from growthindex.core.tails import bounded_above, log_windows
from growthindex.core.verdict import (
    PropertyVerdict,
    conjunction,
    fails,
    from_bool,
    holds,
    inconclusive,
)
from growthindex.indices.matuszewska import (
    alpha,
    beta,
    beta_at_zero,
    gamma,
    gamma_bar,
    reciprocal,
)
from growthindex.legendre.conjugate import (
    conjugate_function,
    largest_convex_minorant,
    least_concave_majorant,
    lower_conjugate,
)
from growthindex.legendre.graph import SampledGraph, hull_graph
from growthindex.weights.function import EvaluableFunction, iota
from growthindex.weights.function_conditions import equivalent

logger = get_logger(__name__)

PAIR_POINTS = 384
PEETRE_LOG_DEPTH = 4.0
IDENTITY_TOL = 0.05
_LOG4 = math.log(4.0)

type Direction = Literal["upper", "lower"]


def k_beta(b: float) -> float:
    """K_beta = (1 + beta)^(-(beta + 1)/beta), the constant of the convex criterion."""
    return (1.0 + b) ** (-(b + 1.0) / b)


def _without_nan(values: np.ndarray) -> np.ndarray:
    return np.where(np.isnan(values), -math.inf, values)


def _cumulative_maxima(need: np.ndarray, cutoffs: list[int], tail: bool) -> np.ndarray:
    """Maximum of ``need`` over the leading (or trailing) square block at each cutoff."""
    out = np.empty(len(cutoffs))
    for i, j in enumerate(cutoffs):
        block = need[:j, :j] if not tail else need[j:, j:]
        out[i] = float(np.max(block)) if block.size else math.nan
    return out


def _tail_bounded(
    graph: SampledGraph, other: np.ndarray, settings: EstimatorSettings
) -> tuple[bool | None, float]:
    """Whether (graph + 1)/(other + 1) and its inverse stay bounded in the graph's tail.

    Returns:
        The boundedness decision and the largest log-ratio seen
    """
    positive = graph.x > 0
    u = np.log(graph.x[positive])
    if graph.domain == "at_zero":
        u = -u
    ratio = np.abs(np.log1p(graph.y[positive]) - np.log1p(other[positive]))
    windows = log_windows(float(u.min()), float(u.max()), settings.windows)
    values = np.full(len(windows), math.nan)
    for k, (lo, hi) in enumerate(windows):
        inside = (u >= lo) & (u <= hi)
        if np.any(inside):
            values[k] = float(np.max(ratio[inside]))
    return bounded_above(values), float(np.max(ratio))


def _constant_verdict(
    condition_id: str,
    values: np.ndarray,
    log_c: float,
    settings: EstimatorSettings,
    **witness: object,
) -> PropertyVerdict:
    bounded = bounded_above(values)
    k = math.inf
    if math.isfinite(log_c):
        k = max(0, math.ceil(max(log_c, 0.0) / math.log(2.0) - 1e-12))
    witness = {"log_C": log_c, "window_values": values, **witness}
    if bounded is False:
        return fails(condition_id, "no constant works up to the horizon", **witness)
    if bounded is None:
        return inconclusive(condition_id, "constant trend not settled", **witness)
    if k > settings.k_search_exponents:
        return inconclusive(condition_id, "C search hit its ceiling", **witness)
    return holds(condition_id, C=2.0**k, **witness)


def peetre_check(
    f: EvaluableFunction, settings: EstimatorSettings | None = None
) -> PropertyVerdict:
    """f(s) <= C f(t) and f(t) s/t <= C (f(s) + 1) for all s < t.

    When some C = 2^k works, the conclusion A F - A <= f <= F for the least
    concave majorant F of f is checked on the samples as well.
    """
    settings = settings or EstimatorSettings()
    lo = max(f.log_floor, -PEETRE_LOG_DEPTH)
    hi = min(f.log_ceiling, settings.log_xmax)
    u = np.linspace(lo, hi, PAIR_POINTS)
    log_f = f.profile(u)
    s_log, t_log = log_f[:, None], log_f[None, :]
    with np.errstate(invalid="ignore"):
        first = np.where(np.isneginf(s_log), -math.inf, s_log - t_log)
        second = t_log + u[:, None] - u[None, :] - np.logaddexp(s_log, 0.0)
    need = _without_nan(np.maximum(first, second))
    need[np.tril_indices(u.size)] = -math.inf

    windows = log_windows(lo, hi, settings.windows)
    cutoffs = [int(np.searchsorted(u, w_hi, side="right")) for _, w_hi in windows]
    values = _cumulative_maxima(need, cutoffs, tail=False)
    i, j = np.unravel_index(int(np.argmax(need)), need.shape)
    inequalities = _constant_verdict(
        "peetre_inequalities",
        values,
        float(need[i, j]),
        settings,
        s=math.exp(u[i]),
        t=math.exp(u[j]),
    )
    if not inequalities.holds:
        logger.debug("Peetre check", name=f.name, status=inequalities.status)
        return inequalities.model_copy(update={"id": "peetre"})

    x = np.concatenate(([0.0], np.exp(u)))
    with np.errstate(over="ignore"):
        y = np.concatenate(([float(f.zero_value)], np.exp(log_f)))
    samples = SampledGraph(x=x, y=y, name=f.name)
    majorant, _ = hull_graph(samples, upper=True)
    bounded, worst = _tail_bounded(samples, majorant.y, settings)
    conclusion = from_bool(
        "peetre_majorant", bounded, "f ~ F up to the horizon", A=math.exp(-worst)
    )
    verdict = conjunction("peetre", [inequalities, conclusion])
    witness = {**verdict.witness, **inequalities.witness, "A": math.exp(-worst)}
    logger.debug("Peetre check", name=f.name, status=verdict.status)
    return verdict.model_copy(update={"witness": witness})


def convex_peetre_check(
    h: EvaluableFunction, b: float, settings: EstimatorSettings | None = None
) -> PropertyVerdict:
    """h(s) + C >= (1/C) min(1, t^b/s^b) h(t) for all s, t > 0.

    When some C = 2^k works, the conclusion H <= h <= A H + A for the
    largest convex minorant H of h is checked on the samples. The witness
    carries K_beta.

    Raises:
        DomainError: If b <= 0
    """
    if not b > 0:
        raise DomainError("beta", b, "must be positive")
    settings = settings or EstimatorSettings()
    lo = max(h.log_floor, -settings.log_xmax)
    hi = min(h.log_ceiling, settings.log_xmax)
    u = np.linspace(lo, hi, PAIR_POINTS)
    log_h = h.profile(u)
    a = log_h[:, None]
    with np.errstate(invalid="ignore"):
        log_q = b * np.minimum(0.0, u[None, :] - u[:, None]) + log_h[None, :]
        # smallest C with C^2 + C h(s) >= q, written as 2q / (h(s) + sqrt(h(s)^2 + 4q))
        root = 0.5 * np.logaddexp(2.0 * a, _LOG4 + log_q)
        need = math.log(2.0) + log_q - np.logaddexp(a, root)
    need = _without_nan(need)

    windows = log_windows(-hi, -lo, settings.windows)
    cutoffs = [int(np.searchsorted(u, -w_hi, side="left")) for _, w_hi in windows]
    values = _cumulative_maxima(need, cutoffs, tail=True)
    i, j = np.unravel_index(int(np.argmax(need)), need.shape)
    inequalities = _constant_verdict(
        "convex_peetre_inequalities",
        values,
        float(need[i, j]),
        settings,
        s=math.exp(u[i]),
        t=math.exp(u[j]),
        K_beta=k_beta(b),
    )
    if not inequalities.holds:
        logger.debug("Convex Peetre check", name=h.name, status=inequalities.status)
        return inequalities.model_copy(update={"id": "convex_peetre"})

    with np.errstate(over="ignore"):
        y = np.exp(log_h)
    finite = np.isfinite(y)
    samples = SampledGraph(x=np.exp(u[finite]), y=y[finite], domain="at_zero", name=h.name)
    minorant, _ = hull_graph(samples, upper=False)
    bounded, worst = _tail_bounded(samples, minorant.y, settings)
    conclusion = from_bool(
        "convex_peetre_minorant", bounded, "h ~ H up to the horizon", A=math.exp(worst)
    )
    verdict = conjunction("convex_peetre", [inequalities, conclusion])
    witness = {**verdict.witness, **inequalities.witness, "A": math.exp(worst)}
    logger.debug("Convex Peetre check", name=h.name, status=verdict.status)
    return verdict.model_copy(update={"witness": witness})


def _shift_verdict(
    condition_id: str, lhs: float, rhs: float, tolerance: float, **witness: object
) -> PropertyVerdict:
    witness = {"lhs": lhs, "rhs": rhs, **witness}
    if math.isinf(lhs) or math.isinf(rhs):
        return from_bool(condition_id, lhs == rhs, **witness)
    return from_bool(condition_id, abs(lhs - rhs) <= tolerance, **witness)


def _upper_shift(
    sigma: EvaluableFunction, g: float, settings: EstimatorSettings
) -> PropertyVerdict:
    condition_id = "gamma_shift_upper"
    if not g > 1:
        return inconclusive(condition_id, "needs gamma(sigma) > 1", gamma=g)
    majorant = least_concave_majorant(sigma, settings)
    hypothesis = equivalent(sigma, majorant.function, settings)
    if not hypothesis.holds:
        return inconclusive(
            condition_id, "sigma ~ (sigma*)_* not confirmed", gamma=g, hypothesis=hypothesis
        )
    shifted = iota(conjugate_function(sigma, settings))
    tol = 2 * settings.tolerance
    parts = [
        _shift_verdict("gamma_shift", g, gamma(shifted, settings) + 1.0, tol),
    ]
    b = beta(sigma, settings).value
    if b > 0:
        parts.append(
            _shift_verdict(
                "gamma_bar_shift", reciprocal(b), gamma_bar(shifted, settings) + 1.0, tol
            )
        )
    verdict = conjunction(condition_id, parts)
    return verdict.model_copy(
        update={"witness": {**verdict.witness, "details": {p.id: p.witness for p in parts}}}
    )


def _lower_shift(
    sigma: EvaluableFunction, g: float, settings: EstimatorSettings
) -> PropertyVerdict:
    condition_id = "gamma_shift_lower"
    if not g > 0:
        return inconclusive(condition_id, "needs gamma(sigma) > 0", gamma=g)
    h = iota(sigma)
    minorant = largest_convex_minorant(h, settings)
    bounded, _ = _tail_bounded(minorant.samples, minorant.hull.y, settings)
    if not bounded:
        return inconclusive(
            condition_id, "sigma^iota ~ ((sigma^iota)_*)* not confirmed", gamma=g
        )
    lower = lower_conjugate(h, settings)
    shift = _shift_verdict(
        "gamma_shift", g + 1.0, gamma(lower, settings), 2 * settings.tolerance
    )
    return shift.model_copy(update={"id": condition_id})


def gamma_shift_check(
    sigma: EvaluableFunction,
    direction: Direction = "upper",
    settings: EstimatorSettings | None = None,
) -> PropertyVerdict:
    """gamma(sigma) = gamma((sigma*)^iota) + 1, or gamma(sigma) + 1 = gamma((sigma^iota)_*).

    The upper shift needs gamma(sigma) > 1 and sigma ~ (sigma*)_*; the
    gamma_bar analogue is added when beta(sigma) > 0. The lower shift needs
    gamma(sigma) > 0. A failed hypothesis gives an inconclusive verdict.

    Raises:
        DomainError: For an unknown direction
    """
    settings = settings or EstimatorSettings()
    g = gamma(sigma, settings)
    if direction == "upper":
        verdict = _upper_shift(sigma, g, settings)
    elif direction == "lower":
        verdict = _lower_shift(sigma, g, settings)
    else:
        raise DomainError("direction", direction, "expected upper or lower")
    logger.debug("Gamma shift", name=sigma.name, direction=direction, status=verdict.status)
    return verdict


def conjugate_index_identity(
    sigma: EvaluableFunction, settings: EstimatorSettings | None = None
) -> PropertyVerdict:
    """1/alpha(sigma) + 1/beta^0(sigma*) = 1, when both indices are finite and nonzero."""
    settings = settings or EstimatorSettings()
    a = alpha(sigma, settings).value
    b0 = beta_at_zero(conjugate_function(sigma, settings), settings).value
    witness = {"alpha": a, "beta_at_zero": b0}
    if not all(math.isfinite(v) and v != 0 for v in (a, b0)):
        return inconclusive("conjugate_index_identity", "an index is 0 or infinite", **witness)
    total = 1.0 / a + 1.0 / b0
    return from_bool(
        "conjugate_index_identity", abs(total - 1.0) <= IDENTITY_TOL, total=total, **witness
    )
