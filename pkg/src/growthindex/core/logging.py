"""Logging setup for growthindex: stdlib logging rendered through rich."""

import logging
import math
from collections.abc import MutableMapping
from typing import Any

from rich.console import Console
from rich.logging import RichHandler

_STDLIB_KWARGS = frozenset({"exc_info", "stack_info", "stacklevel", "extra"})


def _format_value(value: Any) -> str:
    """Render a context value compactly.

    Floats are shown with six significant digits and infinities as ``inf``.
    """
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.6g}"
    if isinstance(value, (tuple, list)):
        return "(" + ", ".join(_format_value(v) for v in value) + ")"
    return str(value)


class StructuredLoggerAdapter(logging.LoggerAdapter):
    """Logger adapter that appends keyword context to the message.

    Example:
        logger = get_logger(__name__)
        logger.debug("Window statistic", index="alpha", lam=4.0, value=0.5)
        # Output: Window statistic [index=alpha lam=4 value=0.5]
    """

    def process(
        self, msg: Any, kwargs: MutableMapping[str, Any]
    ) -> tuple[Any, MutableMapping[str, Any]]:
        """Split stdlib logging kwargs from context data.

        Args:
            msg: Log message
            kwargs: Keyword arguments including context data

        Returns:
            Tuple of (formatted_message, cleaned_kwargs)
        """
        context = {k: v for k, v in kwargs.items() if k not in _STDLIB_KWARGS}
        clean_kwargs = {k: v for k, v in kwargs.items() if k in _STDLIB_KWARGS}

        if context:
            context_str = " ".join(f"{k}={_format_value(v)}" for k, v in sorted(context.items()))
            msg = f"{msg} [dim][[/dim]{context_str}[dim]][/dim]"

        return msg, clean_kwargs


def setup_logging(verbose: bool = False, trace: bool = False) -> None:
    """Configure logging with a rich handler on stderr.

    Only warnings are shown by default.

    Args:
        verbose: Show completed analyses and per-index summaries
        trace: Show per-window estimator diagnostics with source locations
    """
    if trace:
        log_level = logging.DEBUG
    elif verbose:
        log_level = logging.INFO
    else:
        log_level = logging.WARNING

    console = Console(stderr=True, force_terminal=True)

    handler = RichHandler(
        console=console,
        show_time=True,
        show_path=trace,
        markup=True,
        rich_tracebacks=True,
        tracebacks_show_locals=trace,
        log_time_format="[%Y-%m-%d %H:%M:%S]",
    )

    logging.basicConfig(
        level=log_level,
        format="%(message)s",
        handlers=[handler],
        force=True,
    )


def get_logger(name: str) -> StructuredLoggerAdapter:
    """Get a structured logger.

    Args:
        name: Logger name (typically __name__ of the module)

    Returns:
        Logger adapter accepting keyword context
    """
    return StructuredLoggerAdapter(logging.getLogger(name), {})
