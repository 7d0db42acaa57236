"""``periodlab`` command line.

Exit codes: 0 success, 1 input error, 2 numerical conditioning error,
3 property failure.  Every flag can also be set through a ``PERIODLAB_``
environment variable (``PERIODLAB_MODES``, ``PERIODLAB_SEED``, ...).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import beltrami as bm
from . import period, segal, specs, suite, tangent
from .diffeo import NotADiffeomorphism

EXIT_OK, EXIT_INPUT, EXIT_CONDITIONING, EXIT_PROPERTY = 0, 1, 2, 3


def _common(f):
    options = [
        click.option("--modes", "n_modes", type=int, default=32, envvar="PERIODLAB_MODES",
                     show_default=True, help="Fourier truncation N."),
        click.option("--samples", type=int, default=2048, envvar="PERIODLAB_SAMPLES",
                     show_default=True, help="Quadrature points M (power of two)."),
        click.option("--interior", type=int, default=None, envvar="PERIODLAB_INTERIOR",
                     help="Interior block size [default: N/2]."),
        click.option("--tol", type=float, default=period.DEFAULT_TOL, envvar="PERIODLAB_TOL",
                     show_default=True, help="Siegel symmetry tolerance."),
        click.option("--seed", type=int, default=42, envvar="PERIODLAB_SEED",
                     show_default=True),
        click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
                     envvar="PERIODLAB_FORMAT", show_default=True),
        click.option("--out", type=click.Path(dir_okay=False), default=None,
                     envvar="PERIODLAB_OUT", help="Output file [default: stdout]."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _config(**kwargs) -> suite.RunConfig:
    try:
        return suite.RunConfig(**kwargs)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=not text.endswith("\n"))
    else:
        Path(out).write_text(text)


@click.group()
def cli():
    """Period mapping of Diff(S^1)/Moeb(S^1) into the Siegel disc."""


@cli.command("period")
@click.argument("spec")
@_common
def cmd_period(spec, **kwargs):
    """Period matrix of the diffeomorphism described by SPEC (file or JSON)."""
    cfg = _config(**kwargs)
    phi = specs.build_diffeo(specs.load_json(spec), cfg.samples)
    b = segal.blocks(phi, cfg.n_modes)
    point = period.period_matrix(b, interior=cfg.interior, cond_max=period.COND_MAX)
    diag = point.diagnostics()
    diag["member"] = bool(point.symmetry_residual <= cfg.tol
                          and point.min_eig_IminusZZbar > 0)
    if cfg.fmt == "csv":
        body = specs.matrix_to_csv(point.Z)
    else:
        body = json.dumps(specs.matrix_to_json(point.Z))
    if cfg.out is None:
        if cfg.fmt == "json":
            click.echo(json.dumps({"Z": specs.matrix_to_json(point.Z),
                                   "diagnostics": diag}))
        else:
            click.echo(body, nl=False)
            click.echo(json.dumps(diag), err=True)
    else:
        Path(cfg.out).write_text(body)
        Path(cfg.out).with_suffix(".diagnostics.json").write_text(json.dumps(diag))
    return EXIT_OK


@cli.command("verify")
@_common
def cmd_verify(**kwargs):
    """Run the property suite on seeded random inputs."""
    cfg = _config(**kwargs)
    report = suite.run_suite(cfg)
    for line in report.lines():
        click.echo(line, err=True)
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", cfg.out)
    return EXIT_OK if report.passed else EXIT_PROPERTY


def _int_list(text: str | None):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise click.UsageError(f"bad integer list {text!r}") from exc


@cli.command("sweep")
@click.argument("spec")
@click.option("--n-list", default="8,16,32", show_default=True,
              envvar="PERIODLAB_N_LIST", help="Comma-separated N values.")
@click.option("--m-list", default=None, envvar="PERIODLAB_M_LIST",
              help="Comma-separated M values [default: 64N, at least 2048].")
@_common
def cmd_sweep(spec, n_list, m_list, **kwargs):
    """Convergence table (CSV) of residuals against resolution."""
    cfg = _config(**kwargs)
    n_values, m_values = _int_list(n_list), _int_list(m_list)
    m_top = max(m_values) if m_values else None
    phi = specs.build_diffeo(specs.load_json(spec), m_top or cfg.samples)
    try:
        rows = suite.sweep(phi, n_values, m_values)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc
    _emit(suite.sweep_csv(rows), cfg.out)
    return EXIT_OK


@cli.command("variation")
@click.argument("spec")
@click.option("--t", "t", type=float, default=1.0, show_default=True,
              envvar="PERIODLAB_T", help="Deformation parameter.")
@_common
def cmd_variation(spec, t, **kwargs):
    """First-order period variation for the Beltrami coefficient in SPEC."""
    cfg = _config(**kwargs)
    mu = specs.build_beltrami(specs.load_json(spec))
    n = cfg.n_modes
    moments = bm.disc_moments(mu, 2 * n, n_r=2 * n + 16)
    first = bm.rauch_first_variation(moments, t, n)
    a = bm.beltrami_to_vector(moments)
    if cfg.fmt == "csv":
        _emit(specs.matrix_to_csv(first), cfg.out)
        return EXIT_OK
    payload = {
        "t": t,
        "moments": [[float(m.real), float(m.imag)] for m in moments.values],
        "a": [[float(x.real), float(x.imag)] for x in a],
        "first_variation": specs.matrix_to_json(first),
        "schottky_residual": tangent.schottky_residual(tangent.TangentHom(first)),
    }
    _emit(json.dumps(payload) + "\n", cfg.out)
    return EXIT_OK


def main(argv=None) -> int:
    """Run the CLI and return the exit code instead of exiting."""
    try:
        code = cli.main(args=argv, prog_name="periodlab", standalone_mode=False)
    except (specs.SpecError, NotADiffeomorphism) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    except period.ConditioningError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_CONDITIONING
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except click.Abort:
        return EXIT_INPUT
    except (ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    return EXIT_OK if code is None else int(code)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
