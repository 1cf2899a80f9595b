"""Where a command's report goes."""

from collections.abc import Mapping
from pathlib import Path
from typing import Any

import typer

from growthindex.core.report import render_report, write_atomic


def emit(kind: str, payload: Mapping[str, Any], out: str) -> str:
    """Write the report to ``out``, or to stdout when no path was given."""
    text = render_report(kind, payload)
    if out:
        write_atomic(Path(out), text)
    else:
        typer.echo(text, nl=False)
    return text
