"""Main CLI application for growthindex."""

from typing import Annotated, Any

import typer

from growthindex.cli.commands.analyze_fn import run_analyze_fn
from growthindex.cli.commands.analyze_seq import run_analyze_seq
from growthindex.cli.commands.verify import run_verify
from growthindex.config.loader import load_config
from growthindex.config.models import RunConfig
from growthindex.config.presets import get_available_suites
from growthindex.core.errors import (
    GrowthIndexError,
    IncompleteVerificationError,
    VerificationError,
)
from growthindex.core.logging import setup_logging

EXIT_VERIFICATION = 1
EXIT_INPUT = 2

app = typer.Typer(
    name="growthindex",
    help="Growth orders, Matuszewska indices and growth indices of weights",
    no_args_is_help=True,
)

ConfigOption = Annotated[
    str, typer.Option("--config", "-c", help="Path to a YAML run configuration")
]
PmaxOption = Annotated[int | None, typer.Option("--pmax", help="Sequence tabulation horizon")]
XmaxOption = Annotated[float | None, typer.Option("--xmax", help="Evaluation ceiling")]
TolOption = Annotated[float | None, typer.Option("--tol", help="Index tolerance in (0, 0.5)")]
OutOption = Annotated[str, typer.Option("--out", help="Write the JSON report here")]


@app.callback()
def main(
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help="Enable info logging")] = False,
    trace: Annotated[
        bool, typer.Option("--trace", help="Enable debug logging with source paths")
    ] = False,
) -> None:
    """growthindex - estimate and verify indices of weight sequences and functions."""
    setup_logging(verbose=verbose, trace=trace)


def _overrides(
    pmax: int | None, xmax: float | None, tol: float | None, **selection: str
) -> dict[str, Any]:
    """CLI flags that were given, shaped like a RunConfig."""
    settings = {
        key: value
        for key, value in (("pmax", pmax), ("xmax", xmax), ("tolerance", tol))
        if value is not None
    }
    overrides: dict[str, Any] = {k: v for k, v in selection.items() if v}
    if settings:
        overrides["settings"] = settings
    return overrides


def _load(config_file: str, overrides: dict[str, Any]) -> RunConfig:
    try:
        return load_config(config_file, overrides)
    except (FileNotFoundError, ValueError) as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=EXIT_INPUT) from e


def _pick_family(positional: str, option: str) -> str:
    if positional and option and positional != option:
        typer.echo("Error: give the family either as an argument or with --family", err=True)
        raise typer.Exit(code=EXIT_INPUT)
    return positional or option


@app.command("analyze-seq")
def analyze_seq(
    family_arg: Annotated[
        str, typer.Argument(metavar="FAMILY", help="Family spec, e.g. gevrey:alpha=2")
    ] = "",
    family: Annotated[str, typer.Option("--family", help="Family spec")] = "",
    input_path: Annotated[
        str, typer.Option("--input", help="CSV with header p,log_m or p,log_M")
    ] = "",
    pmax: PmaxOption = None,
    xmax: XmaxOption = None,
    tol: TolOption = None,
    out: OutOption = "",
    plot: Annotated[
        str, typer.Option("--plot", help="Write log_m, omega_M and nu_m as CSV here")
    ] = "",
    config: ConfigOption = "",
) -> None:
    """Analyze a weight sequence: conditions, indices and associated functions."""
    overrides = _overrides(
        pmax,
        xmax,
        tol,
        command="analyze-seq",
        family=_pick_family(family_arg, family),
        input=input_path,
        out=out,
        plot=plot,
    )
    run_config = _load(config, overrides)
    try:
        run_analyze_seq(run_config)
    except GrowthIndexError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=EXIT_INPUT) from e


@app.command("analyze-fn")
def analyze_fn(
    family_arg: Annotated[
        str, typer.Argument(metavar="FAMILY", help="Family spec, e.g. gevrey_fn:s=0.5")
    ] = "",
    family: Annotated[str, typer.Option("--family", help="Family spec")] = "",
    input_path: Annotated[str, typer.Option("--input", help="CSV with header t,sigma")] = "",
    xmax: XmaxOption = None,
    tol: TolOption = None,
    out: OutOption = "",
    plot: Annotated[
        str, typer.Option("--plot", help="Write sigma and its conjugate as CSV here")
    ] = "",
    config: ConfigOption = "",
) -> None:
    """Analyze a weight function: (om) conditions, indices and gamma shifts."""
    overrides = _overrides(
        None,
        xmax,
        tol,
        command="analyze-fn",
        family=_pick_family(family_arg, family),
        input=input_path,
        out=out,
        plot=plot,
    )
    run_config = _load(config, overrides)
    try:
        run_analyze_fn(run_config)
    except GrowthIndexError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=EXIT_INPUT) from e


@app.command()
def verify(
    suite: Annotated[
        str,
        typer.Option(
            "--suite", help=f"Verification suite ({', '.join(get_available_suites())})"
        ),
    ] = "",
    pmax: PmaxOption = None,
    xmax: XmaxOption = None,
    tol: TolOption = None,
    out: OutOption = "",
    config: ConfigOption = "",
) -> None:
    """Run a verification suite; exit 1 on a definite contradiction or a case error."""
    if suite and suite not in get_available_suites():
        typer.echo(
            f"Error: Unknown suite '{suite}'. "
            f"Available suites: {', '.join(get_available_suites())}",
            err=True,
        )
        raise typer.Exit(code=EXIT_INPUT)

    run_config = _load(config, _overrides(pmax, xmax, tol, command="verify", suite=suite, out=out))
    try:
        run_verify(run_config)
    except (VerificationError, IncompleteVerificationError) as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=EXIT_VERIFICATION) from e
    except GrowthIndexError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=EXIT_INPUT) from e


if __name__ == "__main__":
    app()
