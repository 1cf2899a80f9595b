"""Verify command implementation."""

import typer

from growthindex.cli.commands.output import emit
from growthindex.config.models import RunConfig
from growthindex.core.errors import IncompleteVerificationError, VerificationError
from growthindex.core.logging import get_logger
from growthindex.core.verifier import SuiteReport, Verifier

logger = get_logger(__name__)


def run_verify(config: RunConfig) -> SuiteReport:
    """Execute the verify command.

    The report is written before any contradiction or case error is raised.

    Args:
        config: Run configuration

    Returns:
        The suite report when every case ran without a definite contradiction

    Raises:
        VerificationError: For the first contradiction found
        IncompleteVerificationError: When a case raised instead of reporting
    """
    logger.info("Starting verification", suite=config.suite)
    report = Verifier(config.settings).run(config.suite)
    emit(
        "verify",
        {
            "suite": report.suite,
            "passed": report.passed,
            "records": report.records,
            "contradictions": report.contradictions,
            "errors": report.errors,
        },
        config.out,
    )
    for err in report.errors:
        typer.echo(f"Case error in {err.suite}/{err.family}: {err.error}: {err.message}", err=True)
    if report.contradictions:
        first = report.contradictions[0]
        for c in report.contradictions:
            typer.echo(f"Contradiction in {c.suite}/{c.family}: {c.first} vs {c.second}", err=True)
        raise VerificationError(
            first.first,
            first.second,
            f"{first.suite}/{first.family}; {len(report.contradictions)} contradiction(s)",
        )
    if report.errors:
        first_error = report.errors[0]
        raise IncompleteVerificationError(
            len(report.errors), f"first in {first_error.suite}/{first_error.family}"
        )
    logger.info("Verification passed", suite=report.suite, records=len(report.records))
    return report
