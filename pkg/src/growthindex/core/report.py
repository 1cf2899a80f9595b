"""JSON report and CSV plot-data writers."""

import csv
import io
import json
import os
import tempfile
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from growthindex.core.logging import get_logger
from growthindex.core.verdict import normalize_witness_value

logger = get_logger(__name__)

SCHEMA_VERSION = 1


def to_jsonable(value: Any) -> Any:
    """Convert models, numpy data and extended reals into JSON data."""
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    return normalize_witness_value(value)


def render_report(kind: str, payload: Mapping[str, Any]) -> str:
    """Render a report document with the schema header.

    Key order follows insertion order so identical inputs give identical
    bytes.
    """
    document = {"schema": SCHEMA_VERSION, "kind": kind}
    document.update({k: to_jsonable(v) for k, v in payload.items()})
    return json.dumps(document, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_atomic(path: Path, text: str) -> None:
    """Write text to ``path`` via a temporary file and rename."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path()
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        Path(tmp_name).replace(path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.info("Wrote file", path=str(path), size=len(text))


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render rows as CSV text with a header line."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(v) for v in row])
    return buffer.getvalue()


def _csv_cell(value: Any) -> Any:
    value = normalize_witness_value(value)
    if isinstance(value, float):
        return repr(value)
    return value


def write_plot_series(path: Path, series: Mapping[str, Iterable[Sequence[Any]]]) -> None:
    """Write several named two-column series into one long-format CSV.

    The output has columns ``series,x,y`` so one file can hold, for example,
    ``log_m``, ``omega_M`` and ``nu_m`` together.
    """
    rows: list[tuple[Any, ...]] = []
    for name, data in series.items():
        rows.extend((name, *row) for row in data)
    write_atomic(path, render_csv(("series", "x", "y"), rows))
