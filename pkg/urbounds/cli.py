"""
Command-line interface for urbounds.

This module provides CLI commands for N-boson energy bounds:
- bounds: Lower/upper bound table over a range of particle numbers
- solve: Ground energy of a one-body semirelativistic Hamiltonian
- verify: Monte Carlo check of the massless lower-bound identity
- status: Proof status of the lower bound per particle number

Exit codes: 0 success, 1 verification failure, 2 input error,
3 numerical failure.
"""

from __future__ import annotations

import sys
import logging
from typing import Any, Callable, Dict, List, Optional

import click

from . import __version__
from .bounds import BoundsRecord, bounds_table, conjecture_status
from .errors import ConfigurationError, DomainError, NumericalError
from .montecarlo import EnsembleFamily, SamplingConfig, mean_angle_stats
from .onebody import OneBodyProblem, SolverConfig, solve
from .output import BOUNDS_COLUMNS, BOUNDS_JSON_COLUMNS, OutputRecord, render, write_plot_files, write_text
from .potentials import PotentialSpec, parse_potential
from .util import parse_count, parse_int_list, parse_n_range

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


def _fail(message: str, code: int) -> None:
    click.echo(click.style(f"✗ {message}", fg='red'), err=True)
    sys.exit(code)


def _run(action: Callable[[], int]) -> None:
    """Execute a command body and map library errors to exit codes."""
    try:
        code = action()
    except (DomainError, ConfigurationError) as e:
        _fail(f"Invalid input: {e}", EXIT_INPUT)
    except NumericalError as e:
        _fail(f"{type(e).__name__}: {e}", EXIT_NUMERICAL)
    except Exception as e:
        logger.exception("unexpected_error")
        _fail(f"Error: {e}", EXIT_NUMERICAL)
    else:
        sys.exit(code)


def _converter(parser: Callable[[str], Any]) -> Callable[[click.Context, click.Parameter, Any], Any]:
    def callback(ctx: click.Context, param: click.Parameter, value: Any) -> Any:
        if value is None:
            return None
        try:
            return parser(value)
        except (ValueError, DomainError) as e:
            raise click.BadParameter(str(e)) from None
    return callback


def _solver_config(basis: int, tol: float, max_basis: Optional[int]) -> SolverConfig:
    return SolverConfig(
        basis_size=basis,
        quadrature_order=max(SolverConfig.quadrature_order, 4 * basis),
        rel_tol=tol,
        max_basis_size=max_basis if max_basis is not None else max(SolverConfig.max_basis_size, basis),
    )


def _emit(record: OutputRecord, fmt: str, out: Optional[str]) -> None:
    text = render(record, fmt)
    if out:
        path = write_text(out, text)
        click.echo(click.style(f"✓ Saved to: {path}", fg='green'))
    else:
        click.echo(text, nl=False)


def _solver_options(func: Callable[..., Any]) -> Callable[..., Any]:
    func = click.option(
        "--strict/--no-strict", default=False,
        help="Treat an unconverged basis escalation as a numerical failure"
    )(func)
    func = click.option(
        "--max-basis", type=int, default=None,
        help="Largest basis size for escalation (default: max(96, --basis))"
    )(func)
    func = click.option(
        "--tol", type=float, default=SolverConfig.rel_tol, show_default=True,
        help="Relative convergence tolerance"
    )(func)
    func = click.option(
        "--basis", type=int, default=SolverConfig.basis_size, show_default=True,
        help="Initial oscillator basis size"
    )(func)
    return func


@click.group()
@click.version_option(package_name='urbounds')
@click.option("--verbose", "-v", is_flag=True, help="Log progress at INFO level")
def cli(verbose: bool) -> None:
    """
    urbounds - energy bounds for ultrarelativistic and semirelativistic
    N-boson systems.

    \b
    - bounds: lower/upper bound table for N in a range
    - solve: one-body ground energy a*sqrt(lam p^2 + mu^2) + b*V(r)
    - verify: Monte Carlo check of <delta(0, N)> = 0
    - status: which lower bounds are proven

    Examples:

    \b
    # Linear potential, massless bosons, N = 2..10
    urbounds bounds --potential linear --N 2..10

    \b
    # The constant e of |p| + r
    urbounds solve --a 1 --mu 0 --b 1 --potential linear
    """
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format='%(asctime)s - %(levelname)s - %(name)s - %(message)s'
    )


@cli.command("bounds")
@click.option(
    "--potential", "-p", "potential",
    default="linear", show_default=True,
    callback=_converter(parse_potential),
    help="Pair potential: linear[:c], coulomb[:c], harmonic[:c], power:q[:c]"
)
@click.option(
    "--N", "n_range",
    required=True,
    callback=_converter(parse_n_range),
    help="Particle numbers a..b (inclusive)"
)
@click.option("--mass", "-m", type=float, default=0.0, show_default=True, help="Boson mass")
@click.option(
    "--format", "fmt",
    type=click.Choice(["csv", "json"]), default="csv", show_default=True,
    help="Table format"
)
@click.option("--out", "-o", default=None, help="Output file (default: stdout)")
@click.option("--plot", default=None, help="Write PREFIX_lower.dat and PREFIX_upper.dat")
@_solver_options
def bounds_command(
    potential: PotentialSpec,
    n_range: List[int],
    mass: float,
    fmt: str,
    out: Optional[str],
    plot: Optional[str],
    basis: int,
    tol: float,
    max_basis: Optional[int],
    strict: bool
) -> None:
    """
    Tabulate lower and Gaussian upper energy bounds.

    Energies are in units of the potential coupling; for massless bosons and
    V = c r^q they scale as c^(1/(1+q)).

    \b
    Examples:

    \b
    urbounds bounds --potential linear --N 2..20
    urbounds bounds --potential harmonic --N 2..6 --mass 1 --format json
    urbounds bounds --potential linear --N 2..10 --plot linear
    """
    def action() -> int:
        config = _solver_config(basis, tol, max_basis)
        records = bounds_table(n_range, potential, mass, config)
        record = OutputRecord(
            command="bounds",
            inputs={
                "potential": potential.descriptor, "N": f"{n_range[0]}..{n_range[-1]}",
                "mass": mass, "basis": basis, "tol": tol, "max_basis": config.max_basis_size,
            },
            rows=[r.to_dict() for r in records],
            columns=BOUNDS_COLUMNS,
            json_columns=BOUNDS_JSON_COLUMNS,
            version=__version__,
        )
        _emit(record, fmt, out)
        if plot:
            for path in write_plot_files(plot, record.rows):
                click.echo(click.style(f"✓ Saved to: {path}", fg='green'))
        return _bounds_summary(records, strict)

    _run(action)


def _bounds_summary(records: List[BoundsRecord], strict: bool) -> int:
    bracketed = [r for r in records if r.ratio is not None]
    if bracketed:
        worst = max(bracketed, key=lambda r: r.ratio or 0.0)
        half_width = max(r.relative_error or 0.0 for r in bracketed)
        click.echo(
            f"Worst ratio upper/lower: {worst.ratio:.6f} (N={worst.n_particles}); "
            f"energy determined to within ±{100 * half_width:.3f}%",
            err=True,
        )
    failed = [r for r in records if r.error]
    if failed:
        for r in failed:
            click.echo(click.style(f"✗ N={r.n_particles}: {r.error}", fg='red'), err=True)
        return EXIT_NUMERICAL
    unconverged = [r.n_particles for r in records if not r.converged]
    if unconverged:
        click.echo(
            click.style(f"! basis escalation did not converge for N={unconverged}", fg='yellow'),
            err=True,
        )
        if strict:
            return EXIT_NUMERICAL
    click.echo(click.style(f"✓ {len(records)} rows", fg='green'), err=True)
    return EXIT_OK


@cli.command("solve")
@click.option("--a", "a", type=float, default=1.0, show_default=True, help="Kinetic weight")
@click.option("--mu", type=float, default=0.0, show_default=True, help="Effective mass")
@click.option("--b", "b", type=float, default=1.0, show_default=True, help="Potential weight")
@click.option("--lam", type=float, default=1.0, show_default=True, help="Momentum weight inside the root")
@click.option(
    "--potential", "-p", "potential",
    default="linear", show_default=True,
    callback=_converter(parse_potential),
    help="Pair potential descriptor"
)
@click.option(
    "--format", "fmt",
    type=click.Choice(["text", "csv", "json"]), default="text", show_default=True,
)
@click.option("--out", "-o", default=None, help="Output file for csv/json")
@_solver_options
def solve_command(
    a: float,
    mu: float,
    b: float,
    lam: float,
    potential: PotentialSpec,
    fmt: str,
    out: Optional[str],
    basis: int,
    tol: float,
    max_basis: Optional[int],
    strict: bool
) -> None:
    """
    Ground energy of a*sqrt(lam p^2 + mu^2) + b*V(r).

    \b
    Examples:

    \b
    urbounds solve --a 1 --mu 0 --b 1 --potential linear
    urbounds solve --a 1 --mu 100 --b 1 --potential harmonic
    """
    def action() -> int:
        config = _solver_config(basis, tol, max_basis)
        problem = OneBodyProblem(a=a, mu=mu, b=b, potential=potential, lam=lam)
        result = solve(problem, config)
        if fmt == "text":
            click.echo(f"energy:          {result.energy:.12g}")
            click.echo(f"optimal scale:   {result.optimal_scale:.6g}")
            click.echo(f"basis size:      {result.basis_size}")
            click.echo(f"convergence:     {result.convergence:.3g}")
            click.echo(f"converged:       {result.converged}")
            if result.note:
                click.echo(f"note:            {result.note}")
        else:
            record = OutputRecord(
                command="solve",
                inputs={
                    "a": a, "mu": mu, "b": b, "lam": lam, "potential": potential.descriptor,
                    "basis": basis, "tol": tol,
                },
                rows=[result.to_dict()],
                version=__version__,
            )
            _emit(record, fmt, out)
        if strict and not result.converged:
            click.echo(click.style(f"✗ {result.note}", fg='red'), err=True)
            return EXIT_NUMERICAL
        return EXIT_OK

    _run(action)


@cli.command("verify")
@click.option(
    "--family", "-f",
    type=click.Choice(["gaussian", "mixture", "ball"]), default="gaussian", show_default=True,
    help="Single-particle momentum law"
)
@click.option(
    "--N", "n_values",
    default="2,3,5,10", show_default=True,
    callback=_converter(parse_int_list),
    help="Comma-separated particle numbers"
)
@click.option("--mass", "-m", type=float, default=0.0, show_default=True, help="Mass in delta(m, N)")
@click.option(
    "--samples", "-n",
    default="1e6", show_default=True,
    callback=_converter(parse_count),
    help="Configurations per N"
)
@click.option("--seed", "-s", type=int, default=42, show_default=True, help="Random seed")
@click.option("--batches", type=int, default=SamplingConfig.n_batches, show_default=True)
@click.option(
    "--format", "fmt",
    type=click.Choice(["text", "csv", "json"]), default="text", show_default=True,
)
@click.option("--out", "-o", default=None, help="Output file for csv/json")
def verify_command(
    family: str,
    n_values: List[int],
    mass: float,
    samples: int,
    seed: int,
    batches: int,
    fmt: str,
    out: Optional[str]
) -> None:
    """
    Monte Carlo check of <delta(0, N)> = 0 and the mean-angle relations.

    Fails (exit 1) when an asserted relation misses its 3-standard-error
    window. Uniform-ball residuals and m > 0 values are reported only.

    \b
    Examples:

    \b
    urbounds verify --family gaussian --N 2,3,5,10 --samples 1e6 --seed 7
    urbounds verify --family ball --N 5
    """
    def action() -> int:
        ensemble = EnsembleFamily.from_name(family)
        sampling = SamplingConfig(n_batches=batches)
        reports = [
            mean_angle_stats(ensemble, n, samples, seed, mass, sampling) for n in n_values
        ]
        rows = [report.to_dict() for report in reports]
        if fmt == "text":
            for report in reports:
                _echo_report(report.to_dict(), report.checks())
        else:
            record = OutputRecord(
                command="verify",
                inputs={
                    "family": ensemble.descriptor, "N": ",".join(map(str, n_values)),
                    "mass": mass, "samples": samples, "seed": seed, "batches": batches,
                },
                rows=rows,
                version=__version__,
            )
            _emit(record, fmt, out)

        failed = [r for r in reports if not r.passed]
        if failed:
            click.echo(
                click.style(f"✗ Verification failed for N={[r.n_particles for r in failed]}", fg='red'),
                err=True,
            )
            return EXIT_VERIFY_FAILED
        click.echo(click.style("✓ All asserted relations hold within 3 SE", fg='green'), err=True)
        return EXIT_OK

    _run(action)


def _echo_report(row: Dict[str, Any], checks: Dict[str, bool]) -> None:
    marks = " ".join(f"{name}:{'ok' if ok else 'FAIL'}" for name, ok in checks.items())
    click.echo(f"N={row['N']} ({row['family']}, {row['samples']} samples, seed {row['seed']})  {marks}")
    click.echo(f"  delta      {row['delta']: .6e} ± {row['delta_se']:.2e}")
    click.echo(f"  cos phi    {row['cos_phi']: .6f} ± {row['cos_phi_se']:.2e}  (target {row['cos_phi_target']:.6f})")
    click.echo(f"  k/d        {row['k_over_d']: .6f} ± {row['k_over_d_se']:.2e}  (target {row['k_over_d_target']:.6f})")
    click.echo(f"  residual   {row['residual']: .3e} ± {row['residual_se']:.2e}")
    click.echo(f"  cos theta  {row['cos_theta']: .6f} ± {row['cos_theta_se']:.2e}  (isosceles {row['isosceles_cos_theta']:.6f})")


@cli.command("status")
@click.option(
    "--potential", "-p", "potential",
    default="linear", show_default=True,
    callback=_converter(parse_potential),
)
@click.option("--N", "n_range", required=True, callback=_converter(parse_n_range))
@click.option("--mass", "-m", type=float, default=0.0, show_default=True)
def status_command(potential: PotentialSpec, n_range: List[int], mass: float) -> None:
    """
    Show which lower bounds are proven.

    \b
    Example:

    \b
    urbounds status --potential linear --N 2..6 --mass 1
    """
    def action() -> int:
        if mass < 0:
            raise DomainError(f"mass must be >= 0, got {mass}", constraint="m >= 0")
        click.echo(f"\nLower-bound status for {potential.descriptor}, m={mass:g}:")
        click.echo("-" * 60)
        for n in n_range:
            status, reason = conjecture_status(mass, n, potential)
            color = 'green' if status.value == "PROVEN" else 'yellow'
            click.echo(f"  N={n:<4} " + click.style(f"{status.value:<12}", fg=color) + f" {reason}")
        return EXIT_OK

    _run(action)


if __name__ == "__main__":
    cli()
