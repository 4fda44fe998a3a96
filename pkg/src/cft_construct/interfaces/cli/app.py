import logging
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Optional

import orjson
import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from cft_construct.core.exceptions import (
    ClassGroupError,
    DegenerateGroupError,
    ElementSearchError,
    InconsistentSystemError,
    InvariantBreachError,
    NotIntegralError,
    NotInvertibleError,
    PrecisionError,
    RamifiedPlaceError,
    ResidueFieldError,
    SearchBoundExceededError,
    SUnitError,
)
from cft_construct.interfaces.cli.config import JobConfig, run_job
from cft_construct.interfaces.cli.fixtures import load_fixture, replay
from cft_construct.modules.extension_analyzer import AnalysisReport, Projection, analyze
from cft_construct.modules.morphism_builder import (
    JSON_OPTIONS,
    BuildOverrides,
    CharMorphismData,
    CharMorphismDocument,
    from_document,
    to_document,
)
from cft_construct.modules.poly_synth import (
    character_kernel,
    frobenius_verify,
    gaussian_period_polynomial,
    norm_form_eval,
    parse_basis,
    parse_coordinates,
)
from cft_construct.settings import settings

logger = logging.getLogger(__name__)

app = typer.Typer(help="Construct abelian extensions with prescribed norms and a valid Hasse norm principle.")
console = Console()
err_console = Console(stderr=True)

# exit code per failure family; first match wins
EXIT_CODES: list[tuple[tuple[type[Exception], ...], int]] = [
    ((SearchBoundExceededError, ElementSearchError, ClassGroupError, PrecisionError), 2),
    ((InvariantBreachError, InconsistentSystemError, NotInvertibleError), 4),
    ((ValueError, SUnitError, NotIntegralError, ResidueFieldError, RamifiedPlaceError, DegenerateGroupError, OSError), 3),
]


@contextmanager
def exit_codes(context: str):
    """Turn library errors into a message on stderr and the matching exit code."""
    try:
        yield
    except typer.Exit:
        raise
    except Exception as e:
        for families, code in EXIT_CODES:
            if isinstance(e, families):
                err_console.print(f"[red]{context}: {type(e).__name__}: {e}[/red]")
                raise typer.Exit(code) from e
        raise


@app.callback()
def main(
    log_level: Annotated[Optional[str], typer.Option(help="Overrides LOG_LEVEL")] = None,
) -> None:
    logging.basicConfig(
        level=(log_level or settings.LOG_LEVEL).upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, rich_tracebacks=True)],
        force=True,
    )


def _load_data(path: Path) -> CharMorphismData:
    return from_document(CharMorphismDocument.from_json(path.read_bytes()))


def _print_report(report: AnalysisReport) -> None:
    summary = Table(title=f"{report.field} / {' x '.join(f'Z/{n}' for n in report.group)}")
    summary.add_column("Projection")
    summary.add_column("Conductor")
    summary.add_column("Split places")
    for projection in report.projections:
        summary.add_row(projection.name, " ".join(projection.conductor), ", ".join(projection.split))
    console.print(summary)
    console.print(f"HNP: {'holds' if report.hnp.verdict else 'FAILS'}")
    for certificate in report.local_norms:
        console.print(f"{certificate.alpha} is a local norm everywhere: {certificate.verdict}")


def _emit(report: AnalysisReport, as_json: bool) -> None:
    if as_json:
        console.print_json(report.to_json().decode())
    else:
        _print_report(report)


@app.command()
def construct(
    config: Annotated[Path, typer.Option("--config", help="JSON job file")],
    search_bound: Annotated[Optional[int], typer.Option(help="Overrides the job's search bound")] = None,
    override_file: Annotated[Optional[Path], typer.Option(help="JSON file of pinned places, roots and uniformisers")] = None,
    out: Annotated[Optional[Path], typer.Option(help="Where to write the data document")] = None,
    as_json: Annotated[bool, typer.Option("--json", help="Print the analysis report as JSON")] = False,
) -> None:
    """Build the characteristic morphism for a job and analyse the resulting extension."""
    with exit_codes("construct"):
        job = JobConfig.load(config)
        if search_bound is not None:
            job.search_bound = search_bound
        if override_file is not None:
            job.overrides = BuildOverrides.model_validate(orjson.loads(override_file.read_bytes()))
        data = run_job(job)
        target = out or (Path(job.out) if job.out else None)
        if target is not None:
            target.write_bytes(to_document(data).to_json())
            logger.info(f"Wrote {target}")
        report = analyze(data)
        _emit(report, as_json)
    if not report.verdict:
        raise typer.Exit(4)


@app.command("analyze")
def analyze_command(
    data_file: Annotated[Path, typer.Argument(help="Data document written by construct")],
    projection: Annotated[Optional[list[str]], typer.Option(help="identity, zero or a factor index; repeatable")] = None,
    split: Annotated[Optional[int], typer.Option(help="Length of the split lists")] = None,
    as_json: Annotated[bool, typer.Option("--json", help="Print the analysis report as JSON")] = False,
) -> None:
    """Analyse a stored extension: conductor, split places, HNP and local norms."""
    with exit_codes("analyze"):
        data = _load_data(data_file)
        projections = [Projection.parse(data.plan.group, text) for text in projection] if projection else None
        report = analyze(data, projections, split_count=split)
        _emit(report, as_json)
    if not report.verdict:
        raise typer.Exit(4)


@app.command()
def poly(
    data_file: Annotated[Path, typer.Argument(help="Data document over Q")],
    projection: Annotated[str, typer.Option(help="identity or a factor index")] = "identity",
    trials: Annotated[Optional[int], typer.Option(help="Primes used by the Frobenius check")] = None,
    as_json: Annotated[bool, typer.Option("--json", help="Print coefficients, constant term first")] = False,
) -> None:
    """Defining polynomial of the subextension cut out by a projection, via Gaussian periods."""
    with exit_codes("poly"):
        data = _load_data(data_file)
        chosen = Projection.parse(data.plan.group, projection)
        dd = character_kernel(data, chosen)
        polynomial = gaussian_period_polynomial(dd)
        verified = frobenius_verify(polynomial, data, chosen, trials)
    if as_json:
        payload = {"projection": chosen.name, "conductor": dd.f, "coefficients": list(polynomial.coefficients), "verified": verified}
        console.print_json(orjson.dumps(payload, option=JSON_OPTIONS).decode())
    else:
        console.print(f"{chosen.name}: {polynomial}  (conductor {dd.f})")
    if not verified:
        err_console.print(f"[red]{polynomial} disagrees with the Artin symbol[/red]")
        raise typer.Exit(4)


@app.command("verify-norm")
def verify_norm(
    basis: Annotated[str, typer.Option(help='"a,b" for 1, sqrt(a), sqrt(b), sqrt(ab) or "poly:c0,...,1"')],
    coords: Annotated[str, typer.Option(help="Comma separated rational coordinates")],
    target: Annotated[str, typer.Option(help="Expected norm")],
) -> None:
    """Evaluate the norm form exactly and compare with the target."""
    with exit_codes("verify-norm"):
        norm = norm_form_eval(parse_basis(basis), parse_coordinates(coords))
        expected = Fraction(target)
    console.print(f"N = {norm}")
    if norm != expected:
        err_console.print(f"[red]norm {norm} differs from {expected}[/red]")
        raise typer.Exit(3)


@app.command("replay-fixture")
def replay_fixture(
    name: Annotated[str, typer.Argument(help="rational_biquadratic or imag_quadratic_47")],
) -> None:
    """Rerun a shipped example and compare it with its recorded values."""
    with exit_codes("replay-fixture"):
        fixture = load_fixture(name)
        _, mismatches = replay(fixture)
    if mismatches:
        for mismatch in mismatches:
            err_console.print(f"[red]{mismatch}[/red]")
        raise typer.Exit(3)
    console.print(f"{fixture.name}: all recorded values reproduced")


if __name__ == "__main__":
    app()
