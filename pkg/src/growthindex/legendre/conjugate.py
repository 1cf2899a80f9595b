"""Upper and lower Legendre conjugates, concave majorants and convex minorants.

sigma*(s) = sup_{t >= 0} (sigma(t) - s t) and h_*(t) = inf_{s > 0} (h(s) + t s).
Both are computed on a shared log grid and refined by golden section. The
s grid is the reciprocal image of the t grid, so iota maps one onto the
other exactly. Hulls are taken in linear coordinates.
"""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import ArrayLike

from growthindex.config.models import EstimatorSettings
from growthindex.core.errors import DomainError
from growthindex.core.logging import get_logger
from growthindex.core.verdict import PropertyVerdict, fails, holds, inconclusive
from growthindex.legendre.graph import (
    Extremum,
    SampledGraph,
    grid_extremum,
    hull_graph,
    is_convex,
)
from growthindex.weights.function import EvaluableFunction, WeightFunction
from growthindex.weights.function_conditions import check_omega

logger = get_logger(__name__)

CONJUGATE_POINTS = 1024
AGREEMENT_REL_TOL = 1e-6
MONOTONE_SLACK = 1e-9
CHUNK = 256


def log_span(f: EvaluableFunction, settings: EstimatorSettings) -> tuple[float, float]:
    """Log-argument range on which f is sampled for conjugation.

    Raises:
        DomainError: If the range is empty
    """
    hi = min(f.log_ceiling, settings.associated_log_cap)
    lo = max(f.log_floor, -settings.log_xmax)
    if not hi > lo:
        raise DomainError("range", (lo, hi), f"{f.name}: nothing to conjugate")
    return lo, hi


def _values(f: EvaluableFunction, log_x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        return np.exp(f.profile(log_x))


def upper_conjugate_values(
    sigma: EvaluableFunction, s: ArrayLike, settings: EstimatorSettings | None = None
) -> Extremum:
    """sigma*(s) at positive s; ``argument`` holds the maximizing t (0 when t = 0 wins)."""
    settings = settings or EstimatorSettings()
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s <= 0):
        raise DomainError("s", float(np.min(s)), "the upper conjugate is taken at s > 0")
    lo, hi = log_span(sigma, settings)
    log_t = np.linspace(lo, hi, CONJUGATE_POINTS)
    t = np.exp(log_t)
    f = _values(sigma, log_t)

    def matrix(rows: np.ndarray) -> np.ndarray:
        return f - np.outer(s[rows], t)

    def refine(u: np.ndarray) -> np.ndarray:
        return _values(sigma, u) - s * np.exp(u)

    ext = grid_extremum(matrix, refine, log_t, s.size, maximize=True, low_edge=True, chunk=CHUNK)
    zero = float(sigma.zero_value)
    at_zero = zero >= ext.value
    return Extremum(
        value=np.where(at_zero, zero, ext.value),
        argument=np.where(at_zero, 0.0, np.exp(ext.argument)),
        censored=ext.censored & ~at_zero,
    )


def lower_conjugate_values(
    h: EvaluableFunction, t: ArrayLike, settings: EstimatorSettings | None = None
) -> Extremum:
    """h_*(t) at t >= 0; ``argument`` holds the minimizing s."""
    settings = settings or EstimatorSettings()
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t < 0):
        raise DomainError("t", float(np.min(t)), "the lower conjugate is taken at t >= 0")
    lo, hi = log_span(h, settings)
    log_s = np.linspace(lo, hi, CONJUGATE_POINTS)
    s = np.exp(log_s)
    f = _values(h, log_s)

    def matrix(rows: np.ndarray) -> np.ndarray:
        return f + np.outer(t[rows], s)

    def refine(u: np.ndarray) -> np.ndarray:
        return _values(h, u) + t * np.exp(u)

    ext = grid_extremum(matrix, refine, log_s, t.size, maximize=False, low_edge=True, chunk=CHUNK)
    return Extremum(value=ext.value, argument=np.exp(ext.argument), censored=ext.censored)


def _trusted_run(log_x: np.ndarray, censored: np.ndarray) -> tuple[float, float]:
    """Ends of the longest run of uncensored samples.

    Raises:
        DomainError: If every sample is censored
    """
    best, start, best_range = 0, None, None
    for i, bad in enumerate([*censored.tolist(), True]):
        if not bad and start is None:
            start = i
        elif bad and start is not None:
            if i - start > best:
                best, best_range = i - start, (start, i - 1)
            start = None
    if best_range is None or best < 2:
        raise DomainError("conjugate", "censored", "no uncensored range of extremizers")
    return float(log_x[best_range[0]]), float(log_x[best_range[1]])


def _check_om5(sigma: EvaluableFunction, settings: EstimatorSettings) -> None:
    verdict = check_omega(sigma, "om5", settings)
    if verdict.fails:
        raise DomainError("sigma", sigma.name, "(om5) fails, so the upper conjugate is infinite")
    if not verdict.holds:
        logger.warning("Conjugating without a definite (om5) verdict", name=sigma.name)


def upper_conjugate(
    sigma: EvaluableFunction, settings: EstimatorSettings | None = None
) -> SampledGraph:
    """sigma* sampled at the reciprocal images of the t grid.

    Raises:
        DomainError: If (om5) fails
    """
    settings = settings or EstimatorSettings()
    _check_om5(sigma, settings)
    lo, hi = log_span(sigma, settings)
    log_s = np.linspace(-hi, -lo, CONJUGATE_POINTS)
    ext = upper_conjugate_values(sigma, np.exp(log_s), settings)
    trusted = ~ext.censored
    y = ext.value[trusted]
    nonincreasing = bool(np.all(np.diff(y) <= MONOTONE_SLACK * np.maximum(1.0, np.abs(y[1:]))))
    convex = is_convex(np.exp(log_s[trusted]), y)
    if not (nonincreasing and convex):
        logger.warning(
            "Upper conjugate shape check failed",
            name=sigma.name,
            nonincreasing=nonincreasing,
            convex=convex,
        )
    return SampledGraph(
        x=np.exp(log_s),
        y=ext.value,
        domain="at_zero",
        censored=ext.censored,
        name=f"{sigma.name}*",
        metadata={"nonincreasing": nonincreasing, "convex": convex},
    )


def conjugate_function(
    sigma: EvaluableFunction, settings: EstimatorSettings | None = None
) -> EvaluableFunction:
    """sigma* as an evaluable function, trusted where the sampled maximizers are uncensored.

    Raises:
        DomainError: If (om5) fails or every maximizer is censored
    """
    settings = settings or EstimatorSettings()
    graph = upper_conjugate(sigma, settings)
    floor, ceiling = _trusted_run(np.log(graph.x), graph.censored)

    def log_profile(u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        values = upper_conjugate_values(sigma, np.exp(u.ravel()), settings).value
        with np.errstate(divide="ignore"):
            return np.log(np.maximum(values, 0.0)).reshape(u.shape)

    return EvaluableFunction(
        log_profile=log_profile,
        log_ceiling=ceiling,
        log_floor=floor,
        zero_value=math.inf,
        name=graph.name,
        metadata={"source": sigma.name},
    )


def lower_conjugate(
    h: EvaluableFunction, settings: EstimatorSettings | None = None
) -> WeightFunction:
    """h_* as a weight function, trusted where the sampled minimizers are uncensored.

    Raises:
        DomainError: If every minimizer is censored
    """
    settings = settings or EstimatorSettings()
    lo, hi = log_span(h, settings)
    log_t = np.linspace(-hi, -lo, CONJUGATE_POINTS)
    ext = lower_conjugate_values(h, np.exp(log_t), settings)
    floor, ceiling = _trusted_run(log_t, ext.censored)

    def log_profile(u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        values = lower_conjugate_values(h, np.exp(u.ravel()), settings).value
        with np.errstate(divide="ignore"):
            return np.log(np.maximum(values, 0.0)).reshape(u.shape)

    inf_h = float(np.min(_values(h, np.linspace(lo, hi, CONJUGATE_POINTS))))
    return WeightFunction(
        log_profile=log_profile,
        log_ceiling=ceiling,
        log_floor=floor,
        zero_value=max(inf_h, 0.0),
        name=f"{h.name}_*",
        metadata={"source": h.name},
    )


def _discrete_sup(x: np.ndarray, y: np.ndarray, slopes: np.ndarray) -> np.ndarray:
    """max_i (y_i - slope x_i) for each slope."""
    out = np.empty(slopes.shape)
    for start in range(0, slopes.size, CHUNK):
        block = slopes[start : start + CHUNK]
        out[start : start + CHUNK] = np.max(y - np.outer(block, x), axis=1)
    return out


def _discrete_inf(x: np.ndarray, y: np.ndarray, slopes: np.ndarray) -> np.ndarray:
    """min_i (y_i + slope x_i) for each slope."""
    return -_discrete_sup(x, -y, slopes)


@dataclass(frozen=True, eq=False)
class HullResult:
    """A hull computed twice: directly and by double conjugation.

    Attributes:
        samples: The sampled input graph
        hull: The direct monotone-chain hull at the sample abscissae
        conjugation: The double conjugate of the samples at the same abscissae
        contacts: Hull vertices, where the hull touches the samples
        agreement: Verdict on the two computations over the uncensored grid
        upper: Concave majorant when True, convex minorant otherwise
    """

    samples: SampledGraph
    hull: SampledGraph
    conjugation: SampledGraph
    contacts: np.ndarray
    agreement: PropertyVerdict
    upper: bool

    @cached_property
    def function(self) -> WeightFunction:
        """The majorant as a piecewise linear weight function.

        Raises:
            DomainError: For a convex minorant, which is not a weight function
        """
        if not self.upper:
            raise DomainError("hull", "minorant", "only majorants are weight functions")
        x, y = self.hull.x, self.hull.y

        def log_profile(u: np.ndarray) -> np.ndarray:
            with np.errstate(divide="ignore"):
                return np.log(np.interp(np.exp(np.asarray(u, dtype=float)), x, y))

        return WeightFunction(
            log_profile=log_profile,
            log_ceiling=math.log(x[-1]),
            zero_value=float(np.interp(0.0, x, y)),
            name=self.hull.name,
            metadata={"contacts": int(np.sum(self.contacts))},
        )


def _agreement(
    condition_id: str,
    hull: np.ndarray,
    conjugated: np.ndarray,
    contacts: np.ndarray,
    censored: np.ndarray,
    abscissae: np.ndarray,
) -> PropertyVerdict:
    gap = np.abs(hull - conjugated) / np.maximum(1.0, np.abs(hull))
    usable = ~censored
    bridged = ~contacts & usable
    witness = {
        "points": int(np.sum(usable)),
        "contacts": int(np.sum(contacts & usable)),
        "max_bridged_gap": float(np.max(gap[bridged])) if np.any(bridged) else 0.0,
    }
    if not np.any(usable):
        return inconclusive(condition_id, "every grid point is censored", **witness)
    worst = int(np.argmax(np.where(usable, gap, -1.0)))
    witness["max_gap"] = float(gap[worst])
    if gap[worst] <= AGREEMENT_REL_TOL:
        return holds(condition_id, **witness)
    return fails(
        condition_id, "hull and double conjugate disagree", x=float(abscissae[worst]), **witness
    )


def least_concave_majorant(
    sigma: EvaluableFunction, settings: EstimatorSettings | None = None
) -> HullResult:
    """(sigma*)_* and the direct upper concave hull of sigma's samples, compared.

    The samples include t = 0. The double conjugate of the samples is exact
    up to the golden refinement of the lower conjugation.

    Raises:
        DomainError: If (om5) fails
    """
    settings = settings or EstimatorSettings()
    _check_om5(sigma, settings)
    lo, hi = log_span(sigma, settings)
    log_t = np.linspace(lo, hi, CONJUGATE_POINTS)
    t = np.concatenate(([0.0], np.exp(log_t)))
    y = np.concatenate(([float(sigma.zero_value)], _values(sigma, log_t)))
    samples = SampledGraph(x=t, y=y, name=sigma.name)
    hull, contacts = hull_graph(samples, upper=True)

    log_s = np.linspace(-hi, -lo, CONJUGATE_POINTS)
    star = _discrete_sup(t, y, np.exp(log_s))

    def matrix(rows: np.ndarray) -> np.ndarray:
        return star + np.outer(t[rows], np.exp(log_s))

    def refine(u: np.ndarray) -> np.ndarray:
        slopes = np.exp(u)
        return _discrete_sup(t, y, slopes) + t * slopes

    ext = grid_extremum(matrix, refine, log_s, t.size, maximize=False, low_edge=True, chunk=CHUNK)
    # at t = 0 the infimum runs off to s -> inf and equals sigma(0)
    censored = ext.censored.copy()
    censored[0] = False
    conj = np.where(np.arange(t.size) == 0, y[0], ext.value)
    conjugation = SampledGraph(x=t, y=conj, censored=censored, name=f"({sigma.name}*)_*")
    agreement = _agreement("hull_agreement", hull.y, conj, contacts, censored, t)
    if not np.all(hull.y >= y - MONOTONE_SLACK * np.maximum(1.0, np.abs(y))):
        agreement = fails("hull_agreement", "the majorant dips below sigma", **agreement.witness)
    logger.debug("Concave majorant", name=sigma.name, status=agreement.status)
    return HullResult(samples, hull, conjugation, contacts, agreement, upper=True)


def largest_convex_minorant(
    h: EvaluableFunction, settings: EstimatorSettings | None = None
) -> HullResult:
    """(h_*)* and the direct lower convex hull of h's samples, compared."""
    settings = settings or EstimatorSettings()
    lo, hi = log_span(h, settings)
    log_s = np.linspace(lo, hi, CONJUGATE_POINTS)
    s = np.exp(log_s)
    y = _values(h, log_s)
    finite = np.isfinite(y)
    samples = SampledGraph(x=s[finite], y=y[finite], domain="at_zero", name=h.name)
    hull, contacts = hull_graph(samples, upper=False)
    sx, sy = samples.x, samples.y

    log_t = np.linspace(-hi, -lo, CONJUGATE_POINTS)
    lower = _discrete_inf(sx, sy, np.exp(log_t))

    def matrix(rows: np.ndarray) -> np.ndarray:
        return lower - np.outer(sx[rows], np.exp(log_t))

    def refine(u: np.ndarray) -> np.ndarray:
        slopes = np.exp(u)
        return _discrete_inf(sx, sy, slopes) - sx * slopes

    ext = grid_extremum(matrix, refine, log_t, sx.size, maximize=True, low_edge=True, chunk=CHUNK)
    conjugation = SampledGraph(
        x=sx, y=ext.value, domain="at_zero", censored=ext.censored, name=f"({h.name}_*)*"
    )
    agreement = _agreement("hull_agreement", hull.y, ext.value, contacts, ext.censored, sx)
    if not np.all(hull.y <= sy + MONOTONE_SLACK * np.maximum(1.0, np.abs(sy))):
        agreement = fails("hull_agreement", "the minorant exceeds h", **agreement.witness)
    logger.debug("Convex minorant", name=h.name, status=agreement.status)
    return HullResult(samples, hull, conjugation, contacts, agreement, upper=False)
