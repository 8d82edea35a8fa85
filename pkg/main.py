import logging
from typing import Callable, Optional, Tuple, TypeVar

import click
from pydantic import ValidationError
from sympy import isprime

from services.app_service import PipelineService
from services.errors import InvalidArgument, NerveLabError
from services.homology import parse_coefficients
from services.verify import TARGETS
from utils.config import RunConfig
from utils.report_formatting import homology_to_text, suite_report_to_text, to_canonical_json, write_atomic

logger = logging.getLogger(__name__)

T = TypeVar("T")

LATTICE_KINDS = click.Choice(list(TARGETS))


def configure_logging(level: str) -> None:
    # Logs go to stderr so JSON on stdout stays machine readable
    logging.basicConfig(
        level=getattr(logging, level),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler()
        ],
        force=True,
    )

    # Reduce noise from other libraries
    logging.getLogger('sqlalchemy.engine').setLevel(logging.WARNING)


def _run(action: Callable[[], T]) -> T:
    """Turn library errors into a click error (exit code 1)"""
    try:
        return action()
    except NerveLabError as e:
        raise click.ClickException(str(e))


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        write_atomic(out, text)
        click.echo(f"Wrote {out}", err=True)
    else:
        click.echo(text, nl=False)


def _validate_coefficients(ctx, param, value: str) -> str:
    try:
        return ",".join(parse_coefficients(value))
    except InvalidArgument as e:
        raise click.BadParameter(str(e))


def _validate_prime(ctx, param, value: int) -> int:
    if not isprime(value):
        raise click.BadParameter(f"{value} is not prime")
    if value < 5:
        raise click.BadParameter(f"{value} is prime but the suite needs p >= 5")
    return value


@click.group()
@click.option('--cache-dir', type=click.Path(file_okay=False), default=None,
              help='Artifact cache directory (overrides NERVELAB_CACHE_DIR)')
@click.option('--no-cache', is_flag=True, help='Do not read or write the artifact cache')
@click.option('--max-simplices', type=int, default=None, help='Cap on the number of simplices of any complex')
@click.option('--max-group-order', type=int, default=None, help='Cap on the order of any permutation group')
@click.option('--time-budget-s', type=float, default=None, help='Time budget of the verification suite')
@click.option('--timings', is_flag=True, help='Record per-verdict timings in the report')
@click.option('-v', '--verbose', is_flag=True, help='Debug logging')
@click.pass_context
def cli(ctx: click.Context,
        cache_dir: Optional[str],
        no_cache: bool,
        max_simplices: Optional[int],
        max_group_order: Optional[int],
        time_budget_s: Optional[float],
        timings: bool,
        verbose: bool):
    """
    NERVELAB - order complexes of reduced partition and subset lattices,
    their free cyclic quotients and exact homology.
    """
    try:
        config = RunConfig.load(
            cache_dir=cache_dir,
            use_cache=False if no_cache else None,
            max_simplices=max_simplices,
            max_group_order=max_group_order,
            time_budget_s=time_budget_s,
            record_timings=True if timings else None,
            log_level="DEBUG" if verbose else None,
        )
    except ValidationError as e:
        raise click.UsageError(f"Invalid configuration: {e}")

    configure_logging(config.log_level)
    service = PipelineService(config)
    ctx.call_on_close(service.close)
    ctx.obj = service


@cli.command(name="lattice")
@click.argument('kind', type=LATTICE_KINDS)
@click.option('--n', 'n', type=int, required=True, help='Ground set size')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Output file (default: stdout)')
@click.pass_obj
def cmd_lattice(service: PipelineService, kind: str, n: int, out: Optional[str]):
    """Poset document of the reduced partition or subset lattice."""
    document = _run(lambda: service.lattice_document(kind, n))
    _emit(to_canonical_json(document), out)


@cli.command(name="complex")
@click.argument('kind', type=LATTICE_KINDS)
@click.option('--n', 'n', type=int, required=True, help='Ground set size')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Output file (default: stdout)')
@click.pass_obj
def cmd_complex(service: PipelineService, kind: str, n: int, out: Optional[str]):
    """Order complex document of a reduced lattice."""
    document = _run(lambda: service.complex_document(kind, n))
    _emit(to_canonical_json(document), out)


@cli.command(name="quotient")
@click.argument('kind', type=LATTICE_KINDS)
@click.option('--n', 'n', type=int, required=True, help='Ground set size')
@click.option('--group', 'generators', multiple=True,
              help='Generator in cycle notation, e.g. "(1 2 3 4 5)"; repeatable (default: C_n)')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Output file (default: stdout)')
@click.pass_obj
def cmd_quotient(service: PipelineService, kind: str, n: int, generators: Tuple[str, ...], out: Optional[str]):
    """Quotient of an order complex by a free permutation group action."""
    document = _run(lambda: service.quotient_document(kind, n, generators))
    _emit(to_canonical_json(document), out)


@cli.command(name="homology")
@click.argument('kind', type=LATTICE_KINDS)
@click.option('--n', 'n', type=int, required=True, help='Ground set size')
@click.option('--group', 'generators', multiple=True, help='Take the quotient by this group first; repeatable')
@click.option('--quotient', 'use_quotient', is_flag=True, help='Take the quotient by C_n first')
@click.option('--coeffs', default='Z', callback=_validate_coefficients, show_default=True,
              help='Comma separated coefficient rings, e.g. Z,Q,F2,F5')
@click.option('--max-dim', type=int, default=None, help='Highest dimension to compute')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Output file (default: stdout)')
@click.option('--json', 'as_json', is_flag=True, help='Emit the JSON report instead of text')
@click.pass_obj
def cmd_homology(service: PipelineService,
                 kind: str,
                 n: int,
                 generators: Tuple[str, ...],
                 use_quotient: bool,
                 coeffs: str,
                 max_dim: Optional[int],
                 out: Optional[str],
                 as_json: bool):
    """Homology of an order complex or of its quotient."""
    report = _run(lambda: service.compute_homology(kind, n, generators, coeffs, quotient=use_quotient,
                                                   max_dim=max_dim))
    _emit(to_canonical_json(report) if as_json else homology_to_text(report), out)


@cli.group()
def verify():
    """Executable verification suites."""


@verify.command(name="paper")
@click.option('--p', 'p', type=int, required=True, callback=_validate_prime, help='Prime p >= 5')
@click.option('--group', 'generators', multiple=True,
              help='Replace C_p by the group generated by these cycles; repeatable')
@click.option('--targets', multiple=True, type=LATTICE_KINDS,
              help='Lattices to verify (default: both)')
@click.option('--out', type=click.Path(dir_okay=False), default=None,
              help='JSON report path (default: nervelab_verify_p<P>.json)')
@click.pass_context
def cmd_pipeline(ctx: click.Context, p: int, generators: Tuple[str, ...], targets: Tuple[str, ...], out: Optional[str]):
    """Verify every claim about the free C_p quotients; exit 0 iff all verdicts pass."""
    service: PipelineService = ctx.obj
    result = _run(lambda: service.run_verification(p, generators, list(targets) or None))

    write_atomic(out or f"nervelab_verify_p{p}.json", to_canonical_json(result))
    click.echo(suite_report_to_text(result), nl=False)
    if not result.passed:
        ctx.exit(1)


if __name__ == "__main__":
    cli()
