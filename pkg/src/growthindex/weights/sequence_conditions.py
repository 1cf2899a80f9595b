"""Classical weight-sequence conditions and sequence equivalences.

(lc) is decided exactly on the table. The limit-type conditions (mg),
(snq), (nq) and (gamma_r) are decided from per-window statistics over the
last log-doubling windows in p, with tail sums extended through the
evaluator when one is attached.
"""

import math
import re
from collections.abc import Callable
from typing import Literal

import numpy as np

from growthindex.config.models import EstimatorSettings
from growthindex.core.errors import DomainError
from growthindex.core.logging import get_logger
from growthindex.core.tails import Trend, bounded_above, classify_tail, log_windows
from growthindex.core.verdict import PropertyVerdict, Status, fails, holds, inconclusive
from growthindex.indices.matuszewska import seq_indices
from growthindex.indices.sums import LogSeries, integer_points
from growthindex.weights.sequence import WeightSequence

logger = get_logger(__name__)

MIN_TAIL_HORIZON = 64
POINTS_PER_WINDOW = 24
BAND_RATIO = 0.95

type SequenceCondition = Literal["lc", "mg", "snq", "nq", "gamma_r"]
type RelationKind = Literal["approx", "simeq"]

_GAMMA_R = re.compile(r"^gamma_r\((?P<r>[^)]+)\)$")


def parse_condition(text: str) -> tuple[str, float | None]:
    """Split a condition id such as ``gamma_r(0.5)`` into name and parameter.

    Raises:
        ValueError: If the condition is unknown
    """
    text = text.strip()
    if match := _GAMMA_R.match(text):
        return "gamma_r", float(match.group("r"))
    if text in ("lc", "mg", "snq", "nq", "gamma_r"):
        return text, None
    raise ValueError(f"unknown sequence condition {text!r}")


def quotient_top(M: WeightSequence) -> float:
    """Largest quotient index the sequence can serve."""
    return M.top - 1.0


def tail_windows(top: float, count: int) -> list[tuple[float, float]]:
    """Doubling windows in log p below log ``top``."""
    return log_windows(0.0, math.log(max(top, 2.0)), count)


def windowed_max(
    statistic: Callable[[np.ndarray], np.ndarray],
    windows: list[tuple[float, float]],
) -> tuple[np.ndarray, float, float]:
    """Per-window max of a statistic on integer points, plus the overall argmax.

    Returns:
        Window maxima, the index p of the overall maximum, and that maximum
    """
    maxima = np.empty(len(windows))
    best_p, best = 0.0, -math.inf
    for i, (lo, hi) in enumerate(windows):
        p = integer_points(lo, hi, POINTS_PER_WINDOW)
        values = np.asarray(statistic(p), dtype=float)
        values = np.where(np.isnan(values), -math.inf, values)
        j = int(np.argmax(values))
        maxima[i] = values[j]
        if values[j] > best:
            best_p, best = float(p[j]), float(values[j])
    return maxima, best_p, best


def bounded_verdict(
    condition_id: str,
    maxima: np.ndarray,
    worst_p: float,
    worst: float,
    constant_name: str,
) -> PropertyVerdict:
    """Turn per-window log-maxima of a ratio into a three-valued verdict."""
    trend = classify_tail(maxima)
    witness = {constant_name: math.exp(min(worst, 700.0)), **trend.as_witness()}
    if math.isinf(worst) and worst > 0:
        return fails(condition_id, "the ratio is infinite", p=int(worst_p), **witness)
    verdict = bounded_above(maxima)
    if verdict is False:
        return fails(condition_id, "the ratio diverges", p=int(worst_p), **witness)
    if verdict is None:
        return inconclusive(condition_id, "the tail trend is not settled", **witness)
    return holds(condition_id, **witness)


def check_lc(M: WeightSequence) -> PropertyVerdict:
    """(lc): the quotients are nondecreasing on the whole table."""
    log_m = M.quotients_table()
    drops = np.flatnonzero(np.diff(log_m) < 0)
    if drops.size:
        p = int(drops[0]) + 1
        return fails("lc", "M_p^2 > M_{p-1} M_{p+1}", p=p, drop=float(log_m[p - 1] - log_m[p]))
    return holds("lc", horizon=M.horizon)


def check_mg(M: WeightSequence, settings: EstimatorSettings) -> PropertyVerdict:
    """(mg) decided by sup m_{2p}/m_p; the other two criteria are cross-checks."""
    top = quotient_top(M)
    if top < MIN_TAIL_HORIZON:
        return inconclusive("mg", "horizon too short", horizon=M.horizon)
    windows = tail_windows(top / 2.0, settings.windows)

    def ratio_c(p: np.ndarray) -> np.ndarray:
        return M.log_m_at(2.0 * p) - M.log_m_at(p)

    def ratio_a(p: np.ndarray) -> np.ndarray:
        return (M.log_M_at(2.0 * p) - 2.0 * M.log_M_at(p)) / (2.0 * p)

    def ratio_b(p: np.ndarray) -> np.ndarray:
        return M.log_m_at(p) - M.log_M_at(p) / p

    decision = bounded_verdict("mg", *windowed_max(ratio_c, windows), "sup_ratio")
    cross = {
        "iii.a": bounded_verdict("mg_a", *windowed_max(ratio_a, windows), "A"),
        "iii.b": bounded_verdict("mg_b", *windowed_max(ratio_b, windows), "sup_ratio"),
    }
    witness = dict(decision.witness)
    witness["criteria"] = {"iii.c": decision.status.value} | {
        k: v.status.value for k, v in cross.items()
    }
    if decision.status is not Status.INCONCLUSIVE:
        witness["criteria_agree"] = all(
            v.status in (decision.status, Status.INCONCLUSIVE) for v in cross.values()
        )
    return PropertyVerdict(
        id="mg", status=decision.status, witness=witness, message=decision.message
    )


def _tail_ratio_verdict(
    condition_id: str,
    M: WeightSequence,
    log_term: Callable[[np.ndarray], np.ndarray],
    log_weight: Callable[[np.ndarray], np.ndarray],
    settings: EstimatorSettings,
    constant_name: str,
) -> PropertyVerdict:
    """Bound sup_p weight(p) * sum_{k>=p} term(k) over the tail windows."""
    top = quotient_top(M)
    if top < MIN_TAIL_HORIZON:
        return inconclusive(condition_id, "horizon too short", horizon=M.horizon)
    series = LogSeries(
        log_term=log_term,
        start=0,
        top=top,
        exact_limit=settings.sum_exact_limit,
        extension=settings.sum_extension,
        rel_tol=settings.quad_rel_tol,
    )
    reach = top / 16.0 if M.has_evaluator else top / 4.0
    windows = tail_windows(reach, settings.windows)

    def statistic(p: np.ndarray) -> np.ndarray:
        tails = np.array([series.log_tail(float(x)) for x in p])
        return log_weight(p) + tails

    verdict = bounded_verdict(condition_id, *windowed_max(statistic, windows), constant_name)
    logger.debug("Checked tail-sum condition", condition=condition_id, status=verdict.status)
    return verdict


def check_snq(M: WeightSequence, settings: EstimatorSettings) -> PropertyVerdict:
    """(snq): m_p * sum_{q>=p} 1/((q+1) m_q) stays bounded."""
    return _tail_ratio_verdict(
        "snq",
        M,
        lambda k: -np.log1p(k) - M.log_m_at(k),
        M.log_m_at,
        settings,
        "B",
    )


def check_gamma_r(M: WeightSequence, r: float, settings: EstimatorSettings) -> PropertyVerdict:
    """(gamma_r): m_p^{1/r}/(p+1) * sum_{k>=p} m_k^{-1/r} stays bounded.

    Raises:
        DomainError: If r <= 0
    """
    if not r > 0:
        raise DomainError("r", r, "gamma_r needs r > 0")
    return _tail_ratio_verdict(
        f"gamma_r({r:g})",
        M,
        lambda k: -M.log_m_at(k) / r,
        lambda p: M.log_m_at(p) / r - np.log1p(p),
        settings,
        "C",
    )


def _log_band(series: LogSeries, lo: float, hi: float) -> float:
    """log of the sum over lo <= k < hi."""
    upper = series.log_partial(hi - 1.0)
    lower = series.log_partial(lo - 1.0)
    if not upper > lower:
        return -math.inf
    return upper + math.log(-math.expm1(lower - upper))


def check_nq(M: WeightSequence, settings: EstimatorSettings) -> PropertyVerdict:
    """(nq): sum 1/((p+1) m_p) converges.

    A positive lower order of m decides it directly; otherwise the local power of
    the summand at the extension point, then the ratio of successive octave band
    sums, are consulted.
    """
    top = quotient_top(M)
    if top < MIN_TAIL_HORIZON:
        return inconclusive("nq", "horizon too short", horizon=M.horizon)
    report = seq_indices(M, settings=settings)
    mu = report.mu.value
    if mu > settings.tolerance:
        return holds("nq", "positive lower order", mu=mu)

    series = LogSeries(
        log_term=lambda k: -np.log1p(k) - M.log_m_at(k),
        start=0,
        top=top,
        exact_limit=settings.sum_exact_limit,
        extension=settings.sum_extension,
        rel_tol=settings.quad_rel_tol,
    )
    anchor = min(top, settings.sum_extension)
    kappa = series.local_slope(anchor)
    if kappa < -1.0 - settings.tolerance:
        return holds("nq", "summable local power", mu=mu, slope=kappa)

    last = int(math.floor(math.log2(anchor)))
    first = max(last - settings.windows, 1)
    band_logs = np.array([_log_band(series, 2.0**k, 2.0 ** (k + 1)) for k in range(first, last)])
    ratios = np.exp(np.diff(band_logs)) if band_logs.size >= 2 else np.array([])
    witness = {"mu": mu, "slope": kappa, "band_ratios": ratios}
    if ratios.size and np.all(ratios >= BAND_RATIO):
        return fails("nq", "octave band sums do not decay", p=int(2.0**last), **witness)
    return inconclusive("nq", "summability not settled at this horizon", **witness)


def check_condition(
    M: WeightSequence,
    cond: str,
    r: float | None = None,
    settings: EstimatorSettings | None = None,
) -> PropertyVerdict:
    """Check one classical condition on a weight sequence.

    Args:
        M: The weight sequence
        cond: One of lc, mg, snq, nq, gamma_r, or gamma_r(r)
        r: Parameter for gamma_r when not embedded in ``cond``
        settings: Estimator settings (defaults when omitted)

    Returns:
        Three-valued verdict with a witness

    Raises:
        DomainError: If gamma_r is requested with r <= 0 or without r
        ValueError: If the condition is unknown
    """
    settings = settings or EstimatorSettings()
    name, embedded = parse_condition(cond)
    match name:
        case "lc":
            return check_lc(M)
        case "mg":
            return check_mg(M, settings)
        case "snq":
            return check_snq(M, settings)
        case "nq":
            return check_nq(M, settings)
        case _:
            value = embedded if embedded is not None else r
            if value is None:
                raise DomainError("r", math.nan, "gamma_r needs a parameter r > 0")
            return check_gamma_r(M, value, settings)


def relation(
    M: WeightSequence,
    L: WeightSequence,
    kind: RelationKind,
    settings: EstimatorSettings | None = None,
) -> PropertyVerdict:
    """Decide M ≈ L (kind ``approx``) or m ≃ ℓ (kind ``simeq``).

    The best constant over the common table (C* or c*) is always reported.
    Verdicts follow the per-window maxima of the gap: bounded means holds,
    diverging upwards means fails, anything else is inconclusive.
    """
    settings = settings or EstimatorSettings()
    condition_id = "approx_equiv" if kind == "approx" else "simeq_equiv"
    if kind == "approx":
        top = min(M.top, L.top)

        def gap(p: np.ndarray) -> np.ndarray:
            return np.abs(M.log_M_at(p) - L.log_M_at(p)) / np.maximum(1.0, p)

        horizon = min(M.horizon, L.horizon)
    else:
        top = min(quotient_top(M), quotient_top(L))

        def gap(p: np.ndarray) -> np.ndarray:
            return np.abs(M.log_m_at(p) - L.log_m_at(p))

        horizon = min(M.horizon, L.horizon) - 1
    table_gap = gap(np.arange(horizon + 1, dtype=float))
    table_p = int(np.argmax(table_gap))
    constant = math.exp(float(table_gap[table_p]))
    constant_name = "C" if kind == "approx" else "c"

    maxima, worst_p, worst = windowed_max(gap, tail_windows(top, settings.windows))
    trend = classify_tail(maxima)
    witness = {
        constant_name: constant,
        "argmax": table_p,
        "tail_max": math.exp(min(worst, 700.0)),
        **trend.as_witness(),
    }
    if trend.kind is Trend.DIVERGING and trend.limit > 0:
        return fails(condition_id, "the normalized gap diverges", p=int(worst_p), **witness)
    if bounded_above(maxima):
        return holds(condition_id, **witness)
    return inconclusive(condition_id, "gap trend is not settled", **witness)
