"""Reading tabulated sequences and functions from CSV files."""

import csv
import math
from pathlib import Path

import numpy as np

from growthindex.core.errors import ConstructionError, InputFormatError
from growthindex.core.logging import get_logger
from growthindex.weights.function import WeightFunction, from_samples
from growthindex.weights.sequence import WeightSequence, from_values

logger = get_logger(__name__)

SEQUENCE_COLUMNS = ("log_m", "log_M")


def _rows(
    path: Path, first: str, columns: tuple[str, ...]
) -> tuple[str, list[tuple[int, float, float]]]:
    """Numeric rows of a two-column CSV whose header is ``first`` and one of ``columns``.

    Returns:
        The value column's name and (line, key, value) rows

    Raises:
        InputFormatError: If the file is missing, the header is wrong or a
            cell is not a finite number
    """
    if not path.exists():
        raise InputFormatError(str(path), "file not found")
    logger.info("Reading input file", path=str(path))
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = [cell.strip() for cell in next(reader, [])]
        if len(header) != 2 or header[0] != first or header[1] not in columns:
            expected = " or ".join(f"{first},{c}" for c in columns)
            raise InputFormatError(str(path), f"header must be {expected}", line=1)
        rows: list[tuple[int, float, float]] = []
        for record in reader:
            line = reader.line_num
            if not any(cell.strip() for cell in record):
                continue
            if len(record) != 2:
                raise InputFormatError(str(path), "expected two columns", line=line)
            try:
                key, value = float(record[0]), float(record[1])
            except ValueError as e:
                raise InputFormatError(str(path), f"not a number: {e}", line=line) from e
            if not (math.isfinite(key) and math.isfinite(value)):
                raise InputFormatError(str(path), "values must be finite", line=line)
            rows.append((line, key, value))
    if len(rows) < 2:
        raise InputFormatError(str(path), "need at least two data rows")
    return header[1], rows


def read_sequence_csv(path: str | Path) -> WeightSequence:
    """Read a sequence table ``p,log_m`` or ``p,log_M``.

    Indices must start at 0 and be contiguous.

    Raises:
        InputFormatError: On a malformed file, a gap in p or values that
            do not form a weight sequence
    """
    path = Path(path)
    column, rows = _rows(path, "p", SEQUENCE_COLUMNS)
    for expected, (line, p, _) in enumerate(rows):
        if p != expected:
            raise InputFormatError(
                str(path), f"p must be contiguous from 0: expected {expected}, got {p:g}", line
            )
    values = np.array([value for _, _, value in rows])
    try:
        if column == "log_m":
            return from_values(log_m=values, name=path.stem)
        return from_values(log_M=values, name=path.stem)
    except ConstructionError as e:
        raise InputFormatError(str(path), str(e)) from e


def read_function_csv(path: str | Path) -> WeightFunction:
    """Read a tabulated weight function ``t,sigma``.

    Raises:
        InputFormatError: On a malformed file, t not strictly increasing or
            negative sigma
    """
    path = Path(path)
    _, rows = _rows(path, "t", ("sigma",))
    t = np.array([key for _, key, _ in rows])
    y = np.array([value for _, _, value in rows])
    for (line, _, _), step in zip(rows[1:], np.diff(t), strict=True):
        if step <= 0:
            raise InputFormatError(str(path), "t must be strictly increasing", line)
    try:
        return from_samples(t, y, name=path.stem)
    except ConstructionError as e:
        raise InputFormatError(str(path), str(e)) from e
