"""Analyze-seq command implementation."""

from pathlib import Path

import numpy as np

from growthindex.associated.duality import duality_report
from growthindex.associated.functions import AssociatedPair, associate, default_t_grid
from growthindex.cli.commands.output import emit
from growthindex.config.models import RunConfig
from growthindex.core.errors import ConstructionError
from growthindex.core.logging import get_logger
from growthindex.core.report import write_plot_series
from growthindex.generators.spec import make_sequence
from growthindex.indices.matuszewska import reciprocal, seq_indices
from growthindex.weights.readers import read_sequence_csv
from growthindex.weights.sequence import WeightSequence
from growthindex.weights.sequence_conditions import check_condition

logger = get_logger(__name__)

SEQUENCE_CONDITIONS = ("lc", "mg", "snq", "nq", "gamma_r(0.5)", "gamma_r(1)", "gamma_r(2)")


def load_sequence(config: RunConfig) -> WeightSequence:
    """The sequence a run selects, from a family spec or a CSV file.

    Raises:
        ConstructionError: If neither or both sources are given
        DomainError: If the family spec is invalid
        InputFormatError: If the CSV file is malformed
    """
    if bool(config.family) == bool(config.input):
        raise ConstructionError("give exactly one of a family spec or --input")
    if config.input:
        return read_sequence_csv(config.input)
    return make_sequence(config.family, config.settings)


def plot_series(pair: AssociatedPair) -> dict[str, list[tuple[float, float]]]:
    """(p, log m_p), (t, omega_M(t)) and (t, nu_m(t)) rows."""
    table = pair.M.quotients_table()
    t = default_t_grid(pair.M)
    t = t[np.log(t) <= pair.log_ceiling]
    s = np.log(t)
    return {
        "log_m": [(float(p), float(v)) for p, v in enumerate(table)],
        "omega_M": [(float(a), float(b)) for a, b in zip(t, pair.omega_values(s), strict=True)],
        "nu_m": [(float(a), float(b)) for a, b in zip(t, pair.counts(s), strict=True)],
    }


def run_analyze_seq(config: RunConfig) -> str:
    """Execute the analyze-seq command.

    Args:
        config: Run configuration

    Returns:
        The rendered JSON report
    """
    logger.info("Starting sequence analysis", family=config.family, input=config.input)
    settings = config.settings
    M = load_sequence(config)

    conditions = [check_condition(M, cond, settings=settings) for cond in SEQUENCE_CONDITIONS]
    m = seq_indices(M, settings)
    duality = duality_report(M, settings)
    payload = {
        "name": M.name,
        "horizon": M.horizon,
        "conditions": conditions,
        "indices": m,
        "gamma": m.beta.value,
        "omega": m.mu.value,
        "gamma_omega": reciprocal(duality.alpha_om),
        "duality": duality,
        "srs": duality.srs,
    }
    text = emit("analyze-seq", payload, config.out)

    if config.plot:
        write_plot_series(Path(config.plot), plot_series(associate(M, settings)))

    logger.info(
        "Sequence analysis completed",
        name=M.name,
        gamma=m.beta.value,
        srs=duality.srs.status.value,
    )
    return text
