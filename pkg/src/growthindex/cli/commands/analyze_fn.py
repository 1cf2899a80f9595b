"""Analyze-fn command implementation."""

from pathlib import Path
from typing import Any

from growthindex.cli.commands.output import emit
from growthindex.config.models import EstimatorSettings, RunConfig
from growthindex.core.errors import ConstructionError, DomainError
from growthindex.core.logging import get_logger
from growthindex.core.report import write_plot_series
from growthindex.core.verdict import PropertyVerdict
from growthindex.generators.spec import make_function
from growthindex.indices.matuszewska import IndexReport, indices
from growthindex.legendre.conjugate import log_span, upper_conjugate
from growthindex.legendre.graph import SampledGraph, sample
from growthindex.legendre.peetre import Direction, gamma_shift_check
from growthindex.weights.function import WeightFunction
from growthindex.weights.function_conditions import check_all
from growthindex.weights.readers import read_function_csv

logger = get_logger(__name__)

# gamma(sigma) must exceed these for the upper and lower shifts
SHIFT_PRECONDITIONS: tuple[tuple[Direction, float], ...] = (("upper", 1.0), ("lower", 0.0))


def load_function(config: RunConfig) -> WeightFunction:
    """The weight function a run selects, from a family spec or a CSV file.

    Raises:
        ConstructionError: If neither or both sources are given
        DomainError: If the family spec is invalid
        InputFormatError: If the CSV file is malformed
    """
    if bool(config.family) == bool(config.input):
        raise ConstructionError("give exactly one of a family spec or --input")
    if config.input:
        return read_function_csv(config.input)
    return make_function(config.family, config.settings)


def gamma_shifts(
    sigma: WeightFunction, report: IndexReport, settings: EstimatorSettings
) -> list[PropertyVerdict]:
    """The gamma shift checks whose gamma precondition holds."""
    shifts: list[PropertyVerdict] = []
    for direction, needed in SHIFT_PRECONDITIONS:
        if not report.gamma > needed:
            continue
        try:
            shifts.append(gamma_shift_check(sigma, direction, settings))
        except DomainError as e:
            logger.info("Gamma shift skipped", name=sigma.name, direction=direction, reason=str(e))
    return shifts


def _trusted_rows(graph: SampledGraph) -> list[tuple[float, float]]:
    return [(x, y) for x, y, censored in graph.rows() if not censored]


def plot_series(
    sigma: WeightFunction, settings: EstimatorSettings
) -> dict[str, list[tuple[float, float]]]:
    """(t, sigma(t)) rows and, when (om5) holds, (s, sigma*(s)) rows."""
    lo, hi = log_span(sigma, settings)
    series: dict[str, list[tuple[float, float]]] = {
        "sigma": _trusted_rows(sample(sigma, lo, hi)),
    }
    try:
        series["conjugate"] = _trusted_rows(upper_conjugate(sigma, settings))
    except DomainError as e:
        logger.info("Conjugate not plotted", name=sigma.name, reason=str(e))
    return series


def run_analyze_fn(config: RunConfig) -> str:
    """Execute the analyze-fn command.

    Args:
        config: Run configuration

    Returns:
        The rendered JSON report
    """
    logger.info("Starting function analysis", family=config.family, input=config.input)
    settings = config.settings
    sigma = load_function(config)

    report = indices(sigma, settings)
    payload: dict[str, Any] = {
        "name": sigma.name,
        "conditions": check_all(sigma, settings),
        "indices": report,
        "alpha": report.alpha.value,
        "beta": report.beta.value,
        "gamma": report.gamma,
        "gamma_shifts": gamma_shifts(sigma, report, settings),
    }
    text = emit("analyze-fn", payload, config.out)

    if config.plot:
        write_plot_series(Path(config.plot), plot_series(sigma, settings))

    logger.info("Function analysis completed", name=sigma.name, gamma=report.gamma)
    return text
