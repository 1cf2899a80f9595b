"""Evaluable positive functions, weight functions and their transforms.

Functions are handled through their log profile phi(s) = log f(e^s), which
keeps power-log families linear-ish in s and lets sequence step functions
reach astronomically large arguments without overflow.
"""

import dataclasses
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np
from numpy.typing import ArrayLike

from growthindex.core.errors import ConstructionError, DomainError, HorizonError
from growthindex.core.logging import get_logger
from growthindex.weights.sequence import QuotientSequence

logger = get_logger(__name__)

type LogProfile = Callable[[np.ndarray], np.ndarray]

DEFAULT_LOG_CEILING = math.log(1e12)
MONOTONE_SAMPLES = 256
MONOTONE_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class EvaluableFunction:
    """A nonnegative function on (0, inf) known through its log profile.

    Attributes:
        log_profile: Vectorized s -> log f(e^s); -inf where f vanishes
        log_ceiling: Largest log-argument the profile is trusted at
        log_floor: Smallest log-argument the profile is trusted at
        threshold: f(t) > 0 for every t >= threshold
        zero_value: f(0)
        name: Label used in reports
        is_step: Piecewise constant (sequence embeddings)
        nondecreasing: Monotonicity promise, validated by WeightFunction
        metadata: Free-form construction details
    """

    log_profile: LogProfile
    log_ceiling: float = DEFAULT_LOG_CEILING
    log_floor: float = -math.inf
    threshold: float = 0.0
    zero_value: float = 0.0
    name: str = ""
    is_step: bool = False
    nondecreasing: bool = False
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.log_ceiling > self.log_floor:
            raise ConstructionError(
                f"{self.name or 'function'}: empty trusted range "
                f"[{self.log_floor:g}, {self.log_ceiling:g}]"
            )

    @property
    def ceiling(self) -> float:
        return math.exp(self.log_ceiling)

    @property
    def tail_start(self) -> float:
        """Log-argument from which tail statistics are taken, max(a, 1) anchored."""
        anchor = math.log(max(self.threshold, 1.0))
        return max(anchor, self.log_floor)

    def profile(self, s: ArrayLike) -> np.ndarray:
        """log f(e^s), with -inf where f vanishes."""
        s = np.asarray(s, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return np.asarray(self.log_profile(s), dtype=float)

    def log_at(self, t: ArrayLike) -> np.ndarray:
        """log f(t) for t > 0.

        Raises:
            HorizonError: If some t exceeds the trusted ceiling
        """
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            s = np.log(t)
        if np.any(s > self.log_ceiling + 1e-9):
            raise HorizonError(float(np.max(t)), self.ceiling, what="argument")
        return self.profile(s)

    def __call__(self, t: ArrayLike) -> np.ndarray:
        """Evaluate f(t); f(0) is ``zero_value``."""
        t = np.asarray(t, dtype=float)
        out = np.full(t.shape, float(self.zero_value))
        positive = t > 0
        if np.any(positive):
            with np.errstate(over="ignore"):
                out[positive] = np.exp(self.log_at(t[positive]))
        return out if out.ndim else out[()]

    def restricted(self, log_ceiling: float) -> "EvaluableFunction":
        """Copy with a lower trusted ceiling."""
        return dataclasses.replace(self, log_ceiling=min(self.log_ceiling, log_ceiling))


@dataclass(frozen=True, eq=False)
class WeightFunction(EvaluableFunction):
    """A nondecreasing unbounded function sigma: [0, inf) -> [0, inf).

    Monotonicity is spot-checked on 256 log-spaced points up to the ceiling
    and growth by sigma(X) > sigma(sqrt(X)).
    """

    nondecreasing: bool = True

    def __post_init__(self) -> None:
        super().__post_init__()
        object.__setattr__(self, "nondecreasing", True)
        lo = self.tail_start
        hi = self.log_ceiling
        s = np.linspace(lo, hi, MONOTONE_SAMPLES)
        phi = self.profile(s)
        if np.any(np.isnan(phi)) or np.any(np.isposinf(phi)):
            raise ConstructionError(f"{self.name}: profile is not finite on the trusted range")
        finite = np.isfinite(phi)
        steps = np.diff(phi)
        both = finite[1:] & finite[:-1]
        slack = MONOTONE_SLACK * np.maximum(1.0, np.abs(phi[1:]))
        bad = both & (steps < -slack)
        bad |= finite[:-1] & ~finite[1:]
        if np.any(bad):
            i = int(np.flatnonzero(bad)[0])
            raise ConstructionError(
                f"{self.name}: not nondecreasing near t={math.exp(s[i + 1]):.6g}"
            )
        top = self.profile(np.array([hi, hi / 2 if hi > 0 else hi - 1.0]))
        if not top[0] > top[1]:
            raise ConstructionError(f"{self.name}: does not grow towards the ceiling")

    @property
    def normalized(self) -> bool:
        """Whether sigma vanishes on [0, 1]."""
        s = np.linspace(max(self.log_floor, -20.0), 0.0, 64)
        return bool(np.all(np.isneginf(self.profile(s)))) and self.zero_value == 0.0


def closed_form(
    name: str,
    log_profile: LogProfile,
    threshold: float = 0.0,
    zero_value: float = 0.0,
    log_ceiling: float = DEFAULT_LOG_CEILING,
    metadata: Mapping[str, Any] | None = None,
) -> WeightFunction:
    """Weight function from a closed-form log profile valid on all of (0, inf)."""
    return WeightFunction(
        log_profile=log_profile,
        log_ceiling=log_ceiling,
        threshold=threshold,
        zero_value=zero_value,
        name=name,
        metadata=dict(metadata or {}),
    )


def from_samples(t: ArrayLike, values: ArrayLike, name: str = "sampled") -> WeightFunction:
    """Weight function by monotone linear interpolation of samples.

    Raises:
        ConstructionError: If t is not strictly increasing or values are negative
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(values, dtype=float)
    if t.ndim != 1 or t.shape != y.shape or t.size < 2:
        raise ConstructionError("samples need matching one-dimensional t and sigma columns")
    if np.any(np.diff(t) <= 0):
        raise ConstructionError("t must be strictly increasing")
    if np.any(y < 0) or not np.all(np.isfinite(y)):
        raise ConstructionError("sigma must be finite and nonnegative")

    def log_profile(s: np.ndarray) -> np.ndarray:
        return np.log(np.interp(np.exp(s), t, y))

    positive = np.flatnonzero(y > 0)
    threshold = float(t[positive[0]]) if positive.size else math.inf
    return WeightFunction(
        log_profile=log_profile,
        log_ceiling=math.log(t[-1]),
        log_floor=math.log(t[0]) if t[0] > 0 else -math.inf,
        threshold=threshold,
        zero_value=float(y[0]) if t[0] == 0 else float(np.interp(0.0, t, y)),
        name=name,
        metadata={"samples": int(t.size)},
    )


def step_embedding(a: QuotientSequence, shifted: bool = False) -> EvaluableFunction:
    """The step function f(x) = a_{floor(x)-1} (x >= 1), a_0 on [0, 1).

    With ``shifted`` the variant f(x) = a_{floor(x)} is produced. No
    monotonicity is required, so plain positive sequences can be embedded.
    """
    offset = 0.0 if shifted else 1.0

    def log_profile(s: np.ndarray) -> np.ndarray:
        x = np.exp(s)
        index = np.maximum(np.floor(x) - offset, 0.0)
        return a.at(index)

    return EvaluableFunction(
        log_profile=log_profile,
        log_ceiling=math.log(a.top + offset),
        threshold=0.0,
        zero_value=float(math.exp(a.log_m[0])),
        name=f"step({a.name})",
        is_step=True,
        nondecreasing=a.nondecreasing,
        metadata={"shifted": shifted},
    )


def step_function(a: QuotientSequence, shifted: bool = False) -> WeightFunction:
    """Weight function embedding of a nondecreasing sequence.

    Raises:
        ConstructionError: If the sequence is not nondecreasing
    """
    if not a.nondecreasing:
        bad = int(np.flatnonzero(np.diff(a.log_m) < 0)[0]) + 1
        raise ConstructionError(f"{a.name}: sequence decreases at p={bad}")
    emb = step_embedding(a, shifted=shifted)
    return WeightFunction(
        log_profile=emb.log_profile,
        log_ceiling=emb.log_ceiling,
        threshold=emb.threshold,
        zero_value=emb.zero_value,
        name=emb.name,
        is_step=True,
        metadata=emb.metadata,
    )


def _rebuild(
    sigma: EvaluableFunction, weight: bool, **changes: Any
) -> EvaluableFunction:
    fields = {
        "log_profile": sigma.log_profile,
        "log_ceiling": sigma.log_ceiling,
        "log_floor": sigma.log_floor,
        "threshold": sigma.threshold,
        "zero_value": sigma.zero_value,
        "name": sigma.name,
        "is_step": sigma.is_step,
        "metadata": sigma.metadata,
    }
    fields.update(changes)
    if weight:
        return WeightFunction(**fields)
    return EvaluableFunction(nondecreasing=False, **fields)


def power_arg(sigma: EvaluableFunction, s: float) -> EvaluableFunction:
    """f_s(t) = f(t^s)."""
    if not s > 0:
        raise DomainError("s", s, "power transforms need s > 0")
    phi = sigma.log_profile
    return _rebuild(
        sigma,
        isinstance(sigma, WeightFunction),
        log_profile=lambda u: phi(s * np.asarray(u, dtype=float)),
        log_ceiling=sigma.log_ceiling / s,
        log_floor=sigma.log_floor / s,
        threshold=sigma.threshold ** (1.0 / s),
        name=f"{sigma.name}(t^{s:g})",
    )


def power_val(sigma: EvaluableFunction, s: float) -> EvaluableFunction:
    """f^s(t) = f(t)^s."""
    if not s > 0:
        raise DomainError("s", s, "power transforms need s > 0")
    phi = sigma.log_profile
    return _rebuild(
        sigma,
        isinstance(sigma, WeightFunction),
        log_profile=lambda u: s * phi(u),
        zero_value=sigma.zero_value**s,
        name=f"({sigma.name})^{s:g}",
    )


def mul_monomial(sigma: EvaluableFunction, r: float) -> EvaluableFunction:
    """t^r f(t); typed as a plain evaluable function when r < 0."""
    phi = sigma.log_profile
    if r > 0:
        zero = 0.0
    elif r == 0:
        zero = sigma.zero_value
    else:
        zero = math.inf
    return _rebuild(
        sigma,
        isinstance(sigma, WeightFunction) and r >= 0,
        log_profile=lambda u: phi(u) + r * np.asarray(u, dtype=float),
        zero_value=zero,
        name=f"t^{r:g}*{sigma.name}",
    )


def iota(sigma: EvaluableFunction) -> EvaluableFunction:
    """f^iota(t) = f(1/t), swapping the behaviour at 0 and at infinity."""
    phi = sigma.log_profile
    floor = sigma.log_floor
    ceiling = -floor if math.isfinite(floor) else sigma.log_ceiling
    return EvaluableFunction(
        log_profile=lambda u: phi(-np.asarray(u, dtype=float)),
        log_ceiling=ceiling,
        log_floor=-sigma.log_ceiling,
        threshold=0.0,
        zero_value=math.inf if sigma.nondecreasing else sigma.zero_value,
        name=f"iota({sigma.name})",
        is_step=sigma.is_step,
        nondecreasing=False,
    )


TransformKind = Literal["power_arg", "power_val", "mul_monomial", "iota"]


def transform(
    sigma: EvaluableFunction, kind: TransformKind, value: float | None = None
) -> EvaluableFunction:
    """Apply a named elementary transform.

    Raises:
        DomainError: For an unknown kind or a missing/invalid parameter
    """
    if kind == "iota":
        return iota(sigma)
    if value is None:
        raise DomainError("value", value, f"transform {kind} needs a parameter")
    if kind == "power_arg":
        return power_arg(sigma, value)
    if kind == "power_val":
        return power_val(sigma, value)
    if kind == "mul_monomial":
        return mul_monomial(sigma, value)
    raise DomainError("kind", kind, "expected power_arg, power_val, mul_monomial or iota")
