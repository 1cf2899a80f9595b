"""Family specifications parsed from strings like ``four_index:beta=1,mu=2,rho=3,alpha=4``."""

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from pydantic import BaseModel, Field, field_validator

from growthindex.config.models import EstimatorSettings
from growthindex.core.errors import DomainError
from growthindex.core.logging import get_logger
from growthindex.generators.counterexample import MIN_HORIZON, counterexample_sequence
from growthindex.generators.families import (
    gevrey_fn,
    gevrey_seq,
    linlog_fn,
    logpow_fn,
    m0_beta,
    m_alpha_beta,
    mq,
    orv_from_representation,
    power_fn,
)
from growthindex.generators.four_index import four_index_sequence
from growthindex.generators.proximate import proximate_family
from growthindex.weights.function import WeightFunction
from growthindex.weights.sequence import QuotientSequence, WeightSequence, from_quotients

logger = get_logger(__name__)

type Generated = WeightSequence | WeightFunction | QuotientSequence


@dataclass(frozen=True)
class _Family:
    kind: str
    required: tuple[str, ...]
    optional: dict[str, float]
    build: Callable[[dict[str, float], EstimatorSettings], Generated]


def _seq(settings: EstimatorSettings) -> dict[str, Any]:
    return {"pmax": settings.pmax, "xmax": settings.xmax}


FAMILIES: dict[str, _Family] = {
    "gevrey_seq": _Family(
        "sequence", ("alpha",), {}, lambda p, s: gevrey_seq(p["alpha"], **_seq(s))
    ),
    "m_alpha_beta": _Family(
        "sequence",
        ("alpha", "beta"),
        {},
        lambda p, s: m_alpha_beta(p["alpha"], p["beta"], **_seq(s)),
    ),
    "m0_beta": _Family("sequence", ("beta",), {}, lambda p, s: m0_beta(p["beta"], **_seq(s))),
    "mq": _Family("sequence", ("q",), {}, lambda p, s: mq(p["q"], **_seq(s))),
    "four_index": _Family(
        "sequence",
        ("beta", "mu", "rho", "alpha"),
        {},
        lambda p, s: four_index_sequence(p["beta"], p["mu"], p["rho"], p["alpha"], **_seq(s)),
    ),
    "counterexample": _Family(
        "sequence", (), {}, lambda p, s: counterexample_sequence(max(s.pmax, MIN_HORIZON), s.xmax)
    ),
    "orv_rep": _Family(
        "sequence",
        (),
        {"d": 0.0, "xi": 1.0, "blocks": 0.0},
        lambda p, s: orv_from_representation(
            p["d"], p["xi"], blocks=int(p["blocks"]) or None, **_seq(s)
        ),
    ),
    "gevrey_fn": _Family("function", ("s",), {}, lambda p, s: gevrey_fn(p["s"], s.xmax)),
    "power_fn": _Family("function", ("s",), {}, lambda p, s: power_fn(p["s"], s.xmax)),
    "linlog_fn": _Family("function", ("alpha",), {}, lambda p, s: linlog_fn(p["alpha"], s.xmax)),
    "logpow_fn": _Family("function", ("s",), {}, lambda p, s: logpow_fn(p["s"], s.xmax)),
    "proximate": _Family(
        "function",
        ("rho",),
        {"b": 0.0},
        lambda p, s: proximate_family(p["rho"], p["b"], s.xmax)[1],
    ),
}

ALIASES = {
    "gevrey": "gevrey_seq",
    "m_ab": "m_alpha_beta",
    "m0": "m0_beta",
    "q_gevrey": "mq",
    "power": "power_fn",
    "linlog": "linlog_fn",
    "logpow": "logpow_fn",
    "orv": "orv_rep",
}

SUPPORTED_FAMILIES = sorted(FAMILIES)


def canonical_family(name: str) -> str:
    """Resolve aliases to a supported family id.

    Raises:
        DomainError: If the family is unknown
    """
    key = ALIASES.get(name.strip(), name.strip())
    if key not in FAMILIES:
        raise DomainError("family", name, f"expected one of {', '.join(SUPPORTED_FAMILIES)}")
    return key


class FamilySpec(BaseModel):
    """A generator family with its parameters."""

    model_config = {"frozen": True}

    family: str
    params: dict[str, float] = Field(default_factory=dict)

    @field_validator("family")
    @classmethod
    def resolve_family(cls, v: str) -> str:
        return canonical_family(v)

    @classmethod
    def from_string(cls, text: str) -> "FamilySpec":
        """Parse ``name`` or ``name:key=value,key=value``.

        Raises:
            DomainError: On an unknown family, a malformed or unknown
                parameter, or a missing required one
        """
        name, _, rest = text.partition(":")
        params: dict[str, float] = {}
        for item in filter(None, (part.strip() for part in rest.split(","))):
            key, sep, value = item.partition("=")
            if not sep or not key.strip():
                raise DomainError("family", text, f"malformed parameter {item!r}")
            try:
                params[key.strip()] = float(value)
            except ValueError as e:
                raise DomainError(key.strip(), value, "parameters must be numbers") from e
        spec = cls(family=canonical_family(name), params=params)
        spec.validate_params()
        return spec

    @property
    def kind(self) -> str:
        """``sequence`` or ``function``."""
        return FAMILIES[self.family].kind

    def validate_params(self) -> None:
        """Check that required parameters are present and no unknown ones are given."""
        family = FAMILIES[self.family]
        missing = [k for k in family.required if k not in self.params]
        if missing:
            raise DomainError(self.family, self.params, f"missing {', '.join(missing)}")
        unknown = sorted(set(self.params) - set(family.required) - set(family.optional))
        if unknown:
            raise DomainError(self.family, self.params, f"unknown {', '.join(unknown)}")

    def __str__(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}:" + ",".join(f"{k}={v:g}" for k, v in self.params.items())


def make(spec: FamilySpec | str, settings: EstimatorSettings | None = None) -> Generated:
    """Build the sequence or function a family spec describes.

    Args:
        spec: A FamilySpec or its string form
        settings: Horizon (pmax) and evaluation ceiling (xmax) to build with

    Raises:
        DomainError: If the spec or its parameters are invalid
    """
    settings = settings or EstimatorSettings()
    if isinstance(spec, str):
        spec = FamilySpec.from_string(spec)
    spec.validate_params()
    family = FAMILIES[spec.family]
    params = {**family.optional, **spec.params}
    built = family.build(params, settings)
    logger.info("Generated family", family=str(spec), kind=family.kind)
    return built


def make_sequence(
    spec: FamilySpec | str, settings: EstimatorSettings | None = None
) -> WeightSequence:
    """Build a sequence family; quotient families are turned into M.

    Raises:
        DomainError: If the spec is invalid or names a function family
    """
    built = make(spec, settings)
    if isinstance(built, QuotientSequence):
        return from_quotients(built)
    if not isinstance(built, WeightSequence):
        raise DomainError("family", str(spec), "expected a sequence family")
    return built


def make_function(
    spec: FamilySpec | str, settings: EstimatorSettings | None = None
) -> WeightFunction:
    """Build a function family.

    Raises:
        DomainError: If the spec is invalid or names a sequence family
    """
    built = make(spec, settings)
    if not isinstance(built, WeightFunction):
        raise DomainError("family", str(spec), "expected a function family")
    return built
