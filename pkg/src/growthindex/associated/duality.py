"""Duality between a weight sequence, its counting function and its associated function.

Indices of m, nu_m and omega_M are estimated side by side and the
reciprocal identities, the ratio bounds of nu_m/omega_M and the seven
characterizations of strong regularity are checked against each other.
"""

import math
from collections.abc import Callable

import numpy as np
from pydantic import BaseModel, Field

from growthindex.associated.functions import AssociatedPair, associate
from growthindex.config.models import EstimatorSettings
from growthindex.core.logging import get_logger
from growthindex.core.tails import (
    bounded_above,
    classify_tail,
    log_windows,
    per_window,
    snap_extended,
)
from growthindex.core.verdict import (
    ExtendedReal,
    PropertyVerdict,
    conjunction,
    contradicts,
    fails,
    from_bool,
    holds,
    inconclusive,
)
from growthindex.indices.matuszewska import IndexReport, indices, reciprocal, seq_indices
from growthindex.indices.sums import integer_points
from growthindex.legendre.conjugate import upper_conjugate_values
from growthindex.weights.function import EvaluableFunction
from growthindex.weights.sequence import WeightSequence, gevrey_multiply
from growthindex.weights.sequence_conditions import (
    check_lc,
    check_mg,
    check_snq,
    quotient_top,
    tail_windows,
)

logger = get_logger(__name__)

SANDWICH_STEPS_PER_E = 8
SANDWICH_POINTS = 64
SANDWICH_SLACK = 1e-6
SANDWICH_LOG_CAP = 700.0
SCALE_EXPONENTS = (1, 2, 3, 4)

SRS_LABELS = ("i", "ii", "iii", "iv", "v", "vi", "vii")


class DualityReport(BaseModel):
    """Indices of m, nu_m and omega_M with the duality checks between them.

    The serialized keys beta_m .. srs are the stable interface; ``checks``
    lists the asserted identities and ``flags`` the reported-only ones.
    """

    model_config = {"frozen": True}

    name: str = ""
    beta_m: ExtendedReal
    alpha_m: ExtendedReal
    mu_m: ExtendedReal
    rho_m: ExtendedReal
    alpha_nu: ExtendedReal
    beta_nu: ExtendedReal
    alpha_om: ExtendedReal
    beta_om: ExtendedReal
    mu_om: ExtendedReal
    rho_om: ExtendedReal
    ratio_liminf: ExtendedReal
    ratio_limsup: ExtendedReal
    srs: PropertyVerdict
    checks: list[PropertyVerdict] = Field(default_factory=list)
    flags: list[PropertyVerdict] = Field(default_factory=list)

    @property
    def consistent(self) -> bool:
        """No asserted identity fails."""
        return not any(v.fails for v in self.checks)

    def check(self, condition_id: str) -> PropertyVerdict:
        """One asserted or flagged identity.

        Raises:
            KeyError: If there is no such identity
        """
        for v in [*self.checks, *self.flags]:
            if v.id == condition_id:
                return v
        raise KeyError(condition_id)


def reciprocal_verdict(
    condition_id: str, first: float, second: float, tolerance: float
) -> PropertyVerdict:
    """first * second = 1 on the extended half line, within ``tolerance``.

    Infinite values pair with values within ``tolerance`` of zero.
    """
    witness = {"first": first, "second": second}
    if math.isnan(first) or math.isnan(second):
        return inconclusive(condition_id, "an index is undetermined", **witness)
    for a, b in ((first, second), (second, first)):
        if math.isinf(a):
            return from_bool(condition_id, abs(b) <= tolerance, **witness)
    if first == 0 or second == 0:
        other = second if first == 0 else first
        return from_bool(condition_id, other >= 1.0 / tolerance, **witness)
    return from_bool(condition_id, abs(first * second - 1.0) <= tolerance, **witness)


def equal_verdict(
    condition_id: str, first: float, second: float, tolerance: float
) -> PropertyVerdict:
    """first = second within ``tolerance``; two infinities of one sign are equal."""
    witness = {"first": first, "second": second}
    if math.isnan(first) or math.isnan(second):
        return inconclusive(condition_id, "an index is undetermined", **witness)
    if math.isinf(first) or math.isinf(second):
        return from_bool(condition_id, first == second, **witness)
    return from_bool(condition_id, abs(first - second) <= tolerance, **witness)


def _at_most(condition_id: str, first: float, second: float, tolerance: float) -> PropertyVerdict:
    witness = {"first": first, "second": second}
    if math.isnan(first) or math.isnan(second):
        return inconclusive(condition_id, "an index is undetermined", **witness)
    return from_bool(condition_id, first <= second + tolerance, **witness)


def ratio_bounds(pair: AssociatedPair, settings: EstimatorSettings) -> tuple[float, float]:
    """liminf and limsup of nu_m(t)/omega_M(t) over the tail windows."""
    lo = pair.omega.tail_start
    windows = log_windows(lo, pair.log_ceiling, settings.windows)

    def log_ratio(s: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.log(pair.counts(s)) - np.log(pair.omega_values(s))

    def trend(reducer: Callable[[np.ndarray], float]) -> float:
        values = per_window(
            log_ratio, windows, settings.points_per_decade, settings.max_window_points, reducer
        )
        tail = classify_tail(values)
        return tail.liminf if reducer is np.min else tail.limsup

    low, high = trend(np.min), trend(np.max)
    return math.exp(max(min(low, 700.0), -700.0)), math.exp(max(min(high, 700.0), -700.0))


def _scaled_ratio(M: WeightSequence, k: int, settings: EstimatorSettings) -> PropertyVerdict:
    """1 < liminf m_{kp}/m_p <= limsup m_{kp}/m_p < inf at one k."""
    condition_id = f"scale_{k}"
    top = quotient_top(M) / k
    if top < 16:
        return inconclusive(condition_id, "horizon too short", k=k)
    windows = tail_windows(top, settings.windows)

    def values(reducer: Callable[[np.ndarray], float]) -> np.ndarray:
        out = np.empty(len(windows))
        for i, (lo, hi) in enumerate(windows):
            p = integer_points(lo, hi)
            out[i] = reducer(M.log_m_at(k * p) - M.log_m_at(p))
        return out

    low = classify_tail(values(np.min))
    bounded = bounded_above(values(np.max))
    floor = snap_extended(low.liminf, settings.tolerance, low)
    witness = {"k": k, "log_liminf": floor}
    if bounded is False:
        return fails(condition_id, "m_kp/m_p is unbounded", **witness)
    if low.settled and floor <= settings.tolerance / 2:
        return fails(condition_id, "liminf m_kp/m_p is 1", **witness)
    if bounded and floor > settings.tolerance / 2:
        return holds(condition_id, **witness)
    return inconclusive(condition_id, "ratio trend not settled", **witness)


def _exists_scale(M: WeightSequence, settings: EstimatorSettings) -> PropertyVerdict:
    parts = [_scaled_ratio(M, 2**j, settings) for j in SCALE_EXPONENTS]
    witness = {v.id: v.status.value for v in parts}
    if any(v.holds for v in parts):
        return holds("srs_ii", **witness)
    if all(v.fails for v in parts):
        return fails("srs_ii", "no k gives bounded ratios above 1", **witness)
    return inconclusive("srs_ii", **witness)


def _orv(M: WeightSequence, settings: EstimatorSettings) -> bool | None:
    """Whether the nondecreasing m is O-regularly varying: m_{2p}/m_p bounded."""
    top = quotient_top(M) / 2
    if top < 16:
        return None
    windows = tail_windows(top, settings.windows)
    maxima = [
        float(np.max(M.log_m_at(2 * p) - M.log_m_at(p)))
        for p in (integer_points(lo, hi) for lo, hi in windows)
    ]
    return bounded_above(maxima)


def _index_pair(condition_id: str, upper: float, lower: float) -> PropertyVerdict:
    """upper < inf and lower > 0."""
    witness = {"alpha": upper, "beta": lower}
    if math.isnan(upper) or math.isnan(lower):
        return inconclusive(condition_id, "an index is undetermined", **witness)
    return from_bool(condition_id, upper < math.inf and lower > 0, **witness)


def _characterizations(
    M: WeightSequence,
    m: IndexReport,
    nu: IndexReport,
    om: IndexReport,
    ratios: tuple[float, float],
    settings: EstimatorSettings,
) -> PropertyVerdict:
    """Strong regularity decided by (iii), with the other six in the witness."""
    orv = _orv(M, settings)
    beta_positive = m.beta.value > 0 if not math.isnan(m.beta.value) else None
    if orv is False or beta_positive is False:
        iv = fails("srs_iv", orv=orv, beta=m.beta.value)
    elif orv and beta_positive:
        iv = holds("srs_iv", beta=m.beta.value)
    else:
        iv = inconclusive("srs_iv", orv=orv, beta=m.beta.value)
    low, high = ratios
    parts = [
        conjunction("srs_i", [check_lc(M), check_mg(M, settings), check_snq(M, settings)]),
        _exists_scale(M, settings),
        _index_pair("srs_iii", m.alpha.value, m.beta.value),
        iv,
        from_bool("srs_v", low > 0 and high < math.inf, liminf=low, limsup=high),
        _index_pair("srs_vi", nu.alpha.value, nu.beta.value),
        _index_pair("srs_vii", om.alpha.value, om.beta.value),
    ]
    decision = parts[2]
    definite = [v for v in parts if v.definite]
    agree = not any(contradicts(a, b) for a in definite for b in definite)
    witness = {
        "characterizations": {
            label: v.status.value for label, v in zip(SRS_LABELS, parts, strict=True)
        },
        "agree": agree,
    }
    if not agree:
        logger.warning("Strong regularity characterizations disagree", name=M.name, **witness)
    return PropertyVerdict(
        id="srs", status=decision.status, witness=witness, message=decision.message
    )


def _et_bound(pair: AssociatedPair) -> PropertyVerdict:
    """omega_M(et) >= nu_m(t) on a grid up to the ceiling."""
    lo = max(float(pair.crossover[0]) - 1.0, -20.0)
    hi = pair.log_ceiling - 1.0
    if not hi > lo:
        return inconclusive("omega_et_nu", "range too short")
    s = np.linspace(lo, hi, SANDWICH_POINTS * 4)
    gap = pair.omega_values(s + 1.0) - pair.counts(s)
    worst = int(np.argmin(gap))
    if gap[worst] >= -SANDWICH_SLACK * max(1.0, float(pair.counts(s[worst : worst + 1])[0])):
        return holds("omega_et_nu", points=int(s.size))
    return fails("omega_et_nu", "omega_M(et) < nu_m(t)", t=math.exp(float(s[worst])))


def _log_ceiling_indices(
    f: EvaluableFunction, pair: AssociatedPair, settings: EstimatorSettings
) -> IndexReport:
    return indices(f, settings, log_ceiling=pair.log_ceiling, with_gamma_check=False)


def duality_report(M: WeightSequence, settings: EstimatorSettings | None = None) -> DualityReport:
    """Estimate the indices of m, nu_m and omega_M and check the dualities between them."""
    settings = settings or EstimatorSettings()
    tol = 2 * settings.tolerance
    pair = associate(M, settings)
    m = seq_indices(M, settings)
    nu = _log_ceiling_indices(pair.nu, pair, settings)
    om = _log_ceiling_indices(pair.omega, pair, settings)
    ratios = ratio_bounds(pair, settings)
    mg = check_mg(M, settings)

    gamma_M = m.beta.value
    gamma_om = reciprocal(om.alpha.value)
    checks = [
        reciprocal_verdict("beta_m_alpha_nu", m.beta.value, nu.alpha.value, tol),
        reciprocal_verdict("alpha_m_beta_nu", m.alpha.value, nu.beta.value, tol),
        _at_most("alpha_om_alpha_nu", om.alpha.value, nu.alpha.value, tol),
        equal_verdict("beta_nu_beta_om", nu.beta.value, om.beta.value, tol),
        _at_most("gamma_M_gamma_om", gamma_M, gamma_om, tol),
        reciprocal_verdict("rho_om_mu_m", om.rho.value, m.mu.value, tol),
        _et_bound(pair),
    ]
    if mg.holds:
        checks.append(equal_verdict("gamma_M_eq_gamma_om", gamma_M, gamma_om, tol))
    srs = _characterizations(M, m, nu, om, ratios, settings)
    if srs.holds:
        checks.append(equal_verdict("alpha_om_srs", om.alpha.value, reciprocal(m.beta.value), tol))
        checks.append(equal_verdict("beta_om_srs", om.beta.value, reciprocal(m.alpha.value), tol))
    flags = [reciprocal_verdict("mu_om_rho_m", om.mu.value, m.rho.value, tol)]

    report = DualityReport(
        name=M.name,
        beta_m=m.beta.value,
        alpha_m=m.alpha.value,
        mu_m=m.mu.value,
        rho_m=m.rho.value,
        alpha_nu=nu.alpha.value,
        beta_nu=nu.beta.value,
        alpha_om=om.alpha.value,
        beta_om=om.beta.value,
        mu_om=om.mu.value,
        rho_om=om.rho.value,
        ratio_liminf=ratios[0],
        ratio_limsup=ratios[1],
        srs=srs,
        checks=checks,
        flags=flags,
    )
    for v in checks:
        if v.fails:
            logger.warning("Duality identity fails", name=M.name, id=v.id, **v.witness)
    logger.info(
        "Duality report",
        name=M.name,
        gamma_M=gamma_M,
        gamma_om=gamma_om,
        srs=srs.status.value,
        consistent=report.consistent,
    )
    return report


def srs_characterizations(
    M: WeightSequence, settings: EstimatorSettings | None = None
) -> PropertyVerdict:
    """The seven characterizations of strong regularity, decided by alpha(m) < inf, beta(m) > 0."""
    return duality_report(M, settings).srs


def hat_relation_check(
    M: WeightSequence, settings: EstimatorSettings | None = None
) -> PropertyVerdict:
    """Relations between omega_M and omega_Mhat for Mhat = (p! M_p).

    (a) omega*_Mhat(1/s) <= omega_M(s) <= omega*_Mhat(1/(es)) on a log grid of
    step 1/8 so that s and es are both grid points, up to log s = 700;
    (b) gamma(omega_Mhat) = gamma(omega_M) + 1.
    """
    settings = settings or EstimatorSettings()
    pair = associate(M, settings)
    hat = associate(gevrey_multiply(M, 1.0), settings)
    gamma_hat = reciprocal(indices(hat.omega, settings, hat.log_ceiling, False).alpha.value)
    gamma_om = reciprocal(indices(pair.omega, settings, pair.log_ceiling, False).alpha.value)
    witness = {"gamma_hat": gamma_hat, "gamma": gamma_om}
    if math.isnan(gamma_hat) or not gamma_hat > 1:
        return inconclusive("hat_relation", "gamma(omega_Mhat) must exceed 1", **witness)

    lo = math.ceil(max(pair.omega.tail_start, 0.0) * SANDWICH_STEPS_PER_E)
    # exp(s) and 1/exp(s) must stay normal floats
    hi = math.floor((min(pair.log_ceiling, SANDWICH_LOG_CAP) - 1.0) * SANDWICH_STEPS_PER_E)
    if hi - lo < SANDWICH_STEPS_PER_E:
        return inconclusive("hat_relation", "range too short", **witness)
    stride = max((hi - lo) // SANDWICH_POINTS, 1)
    s = np.arange(lo, hi + 1, stride, dtype=float) / SANDWICH_STEPS_PER_E
    t = np.exp(s)
    below = upper_conjugate_values(hat.omega, 1.0 / t, settings)
    above = upper_conjugate_values(hat.omega, 1.0 / (math.e * t), settings)
    value = pair.omega_values(s)
    usable = ~below.censored & ~above.censored
    if not np.any(usable):
        return inconclusive("hat_relation", "every conjugate maximizer is censored", **witness)
    slack = SANDWICH_SLACK * np.maximum(1.0, np.abs(value))
    lower_ok = below.value <= value + slack
    upper_ok = value <= above.value + slack
    bad = usable & ~(lower_ok & upper_ok)
    sandwich = (
        fails("hat_sandwich", "omega_M leaves the conjugate sandwich", t=float(t[np.argmax(bad)]))
        if np.any(bad)
        else holds("hat_sandwich", points=int(np.sum(usable)))
    )
    shift = equal_verdict("hat_gamma_shift", gamma_hat, gamma_om + 1.0, 2 * settings.tolerance)
    result = conjunction("hat_relation", [sandwich, shift])
    witness.update(result.witness)
    return result.model_copy(update={"witness": witness})
