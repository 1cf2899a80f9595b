"""Proximate orders rho(t) = rho + b log log t / log t and their functions V = t^rho(t)."""

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from growthindex.core.errors import DomainError
from growthindex.weights.function import WeightFunction, closed_form

type ScalarFunction = Callable[[np.ndarray], np.ndarray]

FREEZE_AT = math.e**2


@dataclass(frozen=True)
class ProximateOrder:
    """A candidate proximate order with a closed-form derivative.

    Attributes:
        value: t -> rho(t)
        derivative: t -> rho'(t)
        start: rho is differentiable on (start, inf)
        limit: The claimed limit of rho(t)
        name: Label used in reports
    """

    value: ScalarFunction
    derivative: ScalarFunction
    start: float
    limit: float
    name: str = ""

    def condition_d(self, t: ArrayLike) -> np.ndarray:
        """t rho'(t) log t, which tends to 0 for a proximate order."""
        t = np.asarray(t, dtype=float)
        return t * self.derivative(t) * np.log(t)

    def log_V(self, t: ArrayLike) -> np.ndarray:
        """log t^rho(t)."""
        t = np.asarray(t, dtype=float)
        return self.value(t) * np.log(t)


def constant_order(rho: float) -> ProximateOrder:
    """rho(t) = rho."""
    return ProximateOrder(
        value=lambda t: np.full(np.shape(t), float(rho)),
        derivative=lambda t: np.zeros(np.shape(t)),
        start=1.0,
        limit=rho,
        name=f"const({rho:g})",
    )


def proximate_family(
    rho: float, b: float, xmax: float = 1e12
) -> tuple[ProximateOrder, WeightFunction]:
    """rho(t) = rho + b log log t / log t with V(t) = t^rho (log t)^b for t >= e^2.

    Below e^2 the exponent is frozen at rho(e^2), so V(t) = t^rho(e^2) there.

    Raises:
        DomainError: If rho < 0, or V is not nondecreasing and unbounded
    """
    if not rho >= 0:
        raise DomainError("rho", rho, "the order must be nonnegative")
    if not b > -2.0 * rho or (rho == 0 and not b > 0):
        raise DomainError("b", b, "V must be nondecreasing and unbounded")
    frozen = rho + b * math.log(2.0) / 2.0

    def value(t: np.ndarray) -> np.ndarray:
        t = np.maximum(np.asarray(t, dtype=float), FREEZE_AT)
        log_t = np.log(t)
        return rho + b * np.log(log_t) / log_t

    def derivative(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        log_t = np.log(np.maximum(t, FREEZE_AT))
        slope = b * (1.0 - np.log(log_t)) / (t * log_t**2)
        return np.where(t > FREEZE_AT, slope, 0.0)

    def log_profile(v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            tail = rho * v + b * np.log(np.maximum(v, 2.0))
        return np.where(v >= 2.0, tail, frozen * v)

    order = ProximateOrder(
        value=value,
        derivative=derivative,
        start=FREEZE_AT,
        limit=rho,
        name=f"prox({rho:g},{b:g})",
    )
    sigma = closed_form(
        f"V({rho:g},{b:g})",
        log_profile,
        log_ceiling=math.log(xmax),
        metadata={"family": "proximate", "rho": rho, "b": b},
    )
    return order, sigma
