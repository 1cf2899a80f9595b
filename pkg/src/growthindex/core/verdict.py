"""Three-valued verdicts and extended-real serialization."""

import math
from collections.abc import Iterable, Mapping
from enum import Enum
from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel, Field, PlainSerializer, field_validator


def format_extended(value: float) -> float | str:
    """Serialize an extended real for JSON."""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


ExtendedReal = Annotated[float, PlainSerializer(format_extended, when_used="json")]


def normalize_witness_value(value: Any) -> Any:
    """Convert a witness value into plain JSON-friendly Python data."""
    if isinstance(value, Mapping):
        return {str(k): normalize_witness_value(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return [normalize_witness_value(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [normalize_witness_value(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format_extended(float(value))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    return value


class Status(str, Enum):
    """Outcome of a numerical condition check."""

    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


class PropertyVerdict(BaseModel):
    """Result of checking a named condition.

    ``holds`` for a limit-type condition means "holds up to the horizon with
    a stable tail trend"; ``fails`` always comes with a concrete witness.
    """

    model_config = {"frozen": True}

    id: str
    status: Status
    witness: dict[str, Any] = Field(default_factory=dict)
    message: str = ""

    @field_validator("witness", mode="before")
    @classmethod
    def normalize_witness(cls, v: Any) -> dict[str, Any]:
        """Make witness values JSON friendly."""
        if v is None:
            return {}
        if not isinstance(v, Mapping):
            raise ValueError("witness must be a mapping")
        return normalize_witness_value(v)

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def definite(self) -> bool:
        return self.status is not Status.INCONCLUSIVE


def holds(condition_id: str, message: str = "", **witness: Any) -> PropertyVerdict:
    """Build a holding verdict."""
    return PropertyVerdict(id=condition_id, status=Status.HOLDS, witness=witness, message=message)


def fails(condition_id: str, message: str = "", **witness: Any) -> PropertyVerdict:
    """Build a failing verdict."""
    return PropertyVerdict(id=condition_id, status=Status.FAILS, witness=witness, message=message)


def inconclusive(condition_id: str, message: str = "", **witness: Any) -> PropertyVerdict:
    """Build an inconclusive verdict."""
    return PropertyVerdict(
        id=condition_id, status=Status.INCONCLUSIVE, witness=witness, message=message
    )


def from_bool(
    condition_id: str, value: bool | None, message: str = "", **witness: Any
) -> PropertyVerdict:
    """Map True/False/None onto holds/fails/inconclusive."""
    if value is None:
        return inconclusive(condition_id, message, **witness)
    return (holds if value else fails)(condition_id, message, **witness)


def conjunction(condition_id: str, parts: Iterable[PropertyVerdict]) -> PropertyVerdict:
    """Combine verdicts with logical AND in three-valued logic."""
    parts = list(parts)
    witness = {p.id: p.status.value for p in parts}
    if any(p.fails for p in parts):
        return fails(condition_id, "a conjunct fails", **witness)
    if all(p.holds for p in parts):
        return holds(condition_id, **witness)
    return inconclusive(condition_id, "a conjunct is inconclusive", **witness)


def contradicts(first: PropertyVerdict, second: PropertyVerdict) -> bool:
    """Whether two verdicts of equivalent conditions are definite and disagree."""
    return first.definite and second.definite and first.status is not second.status
