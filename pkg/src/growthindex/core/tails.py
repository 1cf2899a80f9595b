"""Tail windows and trend classification for finite-horizon limit proxies.

Every limit-type quantity in growthindex (limsup, liminf, boundedness,
convergence to zero) is replaced by a statistic computed on the last few
log-doubling windows below the trusted ceiling, followed by a trend rule
on the per-window values.
"""

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

STABLE_REL_TOL = 1e-3
CONVERGING_RATIO = 0.75
DIVERGING_RATIO = 0.9
DIVERGING_SPREAD = 0.5
HUGE = 1e6
TINY = 1e-6

LN10 = math.log(10.0)


class Trend(str, Enum):
    """Shape of a sequence of per-window statistics."""

    STABLE = "stable"
    CONVERGING = "converging"
    DIVERGING = "diverging"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class TailTrend:
    """Classified per-window statistics.

    Attributes:
        kind: Trend classification
        limit: Extrapolated limit (may be +inf or -inf)
        liminf: Lower proxy for the limit
        limsup: Upper proxy for the limit
        residual: Spread of the last three window values
        values: The per-window statistics, oldest first
    """

    kind: Trend
    limit: float
    liminf: float
    limsup: float
    residual: float
    values: tuple[float, ...]

    @property
    def settled(self) -> bool:
        return self.kind in (Trend.STABLE, Trend.CONVERGING)

    def as_witness(self) -> dict[str, object]:
        return {
            "trend": self.kind.value,
            "limit": self.limit,
            "window_values": list(self.values),
        }


def classify_tail(values: Sequence[float] | np.ndarray) -> TailTrend:
    """Classify per-window statistics ordered from the oldest window.

    Args:
        values: One statistic per window, increasing window position

    Returns:
        The classified trend

    Raises:
        ValueError: If no values are given
    """
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("classify_tail needs at least one window value")
    frozen = tuple(float(x) for x in v)
    residual = float(np.ptp(v[-3:])) if np.all(np.isfinite(v[-3:])) else math.inf

    if np.any(np.isnan(v)):
        nan = math.nan
        return TailTrend(Trend.UNSTABLE, nan, nan, nan, nan, frozen)
    if np.isposinf(v[-1]) or (np.isposinf(v).any() and v[-1] > HUGE):
        return TailTrend(Trend.DIVERGING, math.inf, math.inf, math.inf, residual, frozen)
    if np.isneginf(v[-1]):
        return TailTrend(Trend.DIVERGING, -math.inf, -math.inf, -math.inf, residual, frozen)

    last = float(v[-1])
    if v.size == 1:
        return TailTrend(Trend.STABLE, last, last, last, 0.0, frozen)

    d = np.diff(v)
    if abs(last) > HUGE and abs(last) >= abs(float(v[-2])):
        lim = math.copysign(math.inf, last)
        return TailTrend(Trend.DIVERGING, lim, lim, lim, residual, frozen)
    if abs(d[-1]) <= STABLE_REL_TOL * max(1.0, abs(last)):
        return TailTrend(Trend.STABLE, last, last, last, residual, frozen)

    if d.size >= 2 and (np.all(d > 0) or np.all(d < 0)):
        ratio = float(d[-1] / d[-2])
        if ratio < CONVERGING_RATIO:
            lim = last + float(d[-1]) * ratio / (1.0 - ratio)
            return TailTrend(Trend.CONVERGING, lim, lim, lim, residual, frozen)
        # diverging trends also move by at least half their first value
        spread = abs(last - float(v[0]))
        if ratio >= DIVERGING_RATIO and spread >= DIVERGING_SPREAD * abs(float(v[0])):
            lim = math.copysign(math.inf, float(d[-1]))
            return TailTrend(Trend.DIVERGING, lim, lim, lim, residual, frozen)

    lo = float(np.min(v[-2:]))
    hi = float(np.max(v[-2:]))
    return TailTrend(Trend.UNSTABLE, last, lo, hi, residual, frozen)


def bounded_above(values: Sequence[float] | np.ndarray) -> bool | None:
    """Decide whether per-window statistics stay bounded.

    Returns:
        True when bounded, False when diverging upwards, None when undecided
    """
    trend = classify_tail(values)
    if trend.kind is Trend.DIVERGING:
        return trend.limit < 0
    if trend.settled:
        return True
    v = np.asarray(values, dtype=float)
    if v.size > 2:
        previous = float(np.max(v[:-2]))
        if float(np.max(v[-2:])) <= previous + STABLE_REL_TOL * max(1.0, abs(previous)):
            return True
    return None


def log_windows(s_lo: float, s_hi: float, count: int = 4) -> list[tuple[float, float]]:
    """Last ``count`` log-doubling windows in s = log x below ``s_hi``.

    Windows are doubling in the distance above ``max(s_lo, 0)``, so for
    functions trusted from x = 1 they are ``[s_hi/2^(k+1), s_hi/2^k]``.

    Raises:
        ValueError: If the trusted range is empty
    """
    base = max(s_lo, 0.0) if s_hi > 0 else s_lo
    length = s_hi - base
    if not length > 0:
        raise ValueError(f"empty trusted range [{s_lo:g}, {s_hi:g}]")
    return [
        (base + length / 2 ** (k + 1), base + length / 2**k) for k in reversed(range(count))
    ]


def window_grid(lo: float, hi: float, points_per_decade: int, max_points: int) -> np.ndarray:
    """Uniform grid in s = log x covering [lo, hi] at the requested density."""
    step = LN10 / points_per_decade
    n = int(np.clip(math.ceil((hi - lo) / step) + 1, 8, max_points))
    return np.linspace(lo, hi, n)


def per_window(
    statistic: Callable[[np.ndarray], np.ndarray],
    windows: Sequence[tuple[float, float]],
    points_per_decade: int,
    max_points: int,
    reducer: Callable[[np.ndarray], float] = np.max,
) -> np.ndarray:
    """Reduce a vectorized statistic over each window's grid."""
    out = np.empty(len(windows))
    for i, (lo, hi) in enumerate(windows):
        values = np.asarray(statistic(window_grid(lo, hi, points_per_decade, max_points)))
        finite = values[~np.isnan(values)]
        out[i] = reducer(finite) if finite.size else math.nan
    return out


def snap_extended(value: float, tolerance: float, trend: TailTrend | None = None) -> float:
    """Apply the extended-real conventions to an index estimate.

    Values above 1e6 become +inf; values within 1e-6 of zero, or within
    tolerance/2 of zero on a settled decreasing trend, become 0.
    """
    if math.isnan(value):
        return value
    if value > HUGE:
        return math.inf
    if value < -HUGE:
        return -math.inf
    if abs(value) < TINY:
        return 0.0
    if (
        trend is not None
        and trend.kind is Trend.CONVERGING
        and len(trend.values) >= 2
        and trend.values[-1] < trend.values[-2]
        and abs(value) <= tolerance / 2
    ):
        return 0.0
    return value
