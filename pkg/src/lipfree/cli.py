"""Command line entry point: ``lipfree <command>``.

Exit codes: 0 all checks pass, 1 a bound is violated, 2 bad config or input.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from . import algebra as alg
from .errors import InvalidSpace, LipfreeError
from .free import dual_norm, free_norm
from .harness import SUITES, ExperimentConfig, Report, emit_report, report_json, run_suite
from .io import load_space, load_vector, space_to_json
from .transform import build_bounded_space, check_compbis
from .weights import alpha_constants, parse_alpha

EXIT_FAIL, EXIT_INPUT = 1, 2


def _fail_input(msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(EXIT_INPUT)


def _load_space(path):
    try:
        return load_space(path)
    except InvalidSpace as exc:
        click.echo(f"invalid space: {type(exc).__name__}: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except (OSError, ValueError, KeyError) as exc:
        _fail_input(f"cannot read space file {path}: {exc}")


def _alpha(spec):
    try:
        return parse_alpha(spec)
    except LipfreeError as exc:
        _fail_input(str(exc))


def _emit(data: dict, out: str | None):
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


@click.group()
def main():
    """Lipschitz-free norms, bounded transforms B(M, alpha) and their verification."""


@main.command()
@click.argument("space", type=click.Path(dir_okay=False))
def validate(space):
    """Check that SPACE is a finite pointed metric space."""
    M = _load_space(space)
    click.echo(f"ok: {M.n} points")


@main.command()
@click.argument("space", type=click.Path(dir_okay=False))
@click.argument("vector", type=click.Path(dir_okay=False))
@click.option("--tol", default=1e-9, show_default=True, help="duality agreement tolerance")
def norm(space, vector, tol):
    """Free norm of VECTOR, by transport and by the potential LP."""
    M = _load_space(space)
    try:
        g = load_vector(M, vector)
    except (OSError, ValueError) as exc:
        _fail_input(f"cannot read vector file {vector}: {exc}")
    primal = free_norm(g)
    value, f = dual_norm(g)
    _emit({"norm": primal, "dual": value, "witness": f.values.tolist()}, None)
    if abs(primal - value) > tol:
        sys.exit(EXIT_FAIL)


@main.command()
@click.argument("space", type=click.Path(dir_okay=False))
@click.option("--alpha", default="identity", show_default=True,
              help="identity | shifted | linear:<c> | file:<path>")
@click.option("--out", type=click.Path(dir_okay=False), help="write the space file here")
def transform(space, alpha, out):
    """Write B(M, alpha) as a space file."""
    M = _load_space(space)
    a = _alpha(alpha)
    try:
        B = build_bounded_space(M, a)
    except LipfreeError as exc:
        _fail_input(str(exc))
    rep = check_compbis(B, raise_on_fail=False)
    _emit(space_to_json(B.space), out)
    if not rep.ok:
        click.echo(f"distance sandwich violated: {rep}", err=True)
        sys.exit(EXIT_FAIL)


@main.command()
@click.argument("space", type=click.Path(dir_okay=False))
@click.option("--alpha", default="identity", show_default=True)
def spectrum(space, alpha):
    """List the characters of (Lip_0(M), odot_alpha)."""
    M = _load_space(space)
    a = _alpha(alpha)
    try:
        ctx = alg.make_context(M, a)
    except LipfreeError as exc:
        _fail_input(str(exc))
    chars = alg.characters(ctx)
    c = alpha_constants(a)
    _emit({
        "points": M.n,
        "product_constant": c.product_constant,
        "characters": [{"point": ch.point, "values": ch.values.tolist()} for ch in chars],
    }, None)
    if len(chars) != M.n - 1:
        sys.exit(EXIT_FAIL)


@main.command()
@click.option("--suite", type=click.Choice(("all",) + SUITES), default="all", show_default=True)
@click.option("--alpha", "alphas", multiple=True,
              help="weight(s) to test; default identity, shifted and linear:3")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--trials", type=int, default=10, show_default=True)
@click.option("--size", type=int, default=12, show_default=True, help="largest space size")
@click.option("--tol", type=float, default=1e-9, show_default=True, help="equality and bound tolerance")
@click.option("--zero-tol", type=float, default=1e-12, show_default=True, help="tolerance for zero checks")
@click.option("--out", type=click.Path(file_okay=False), default=None)
@click.option("--format", "formats", multiple=True, type=click.Choice(("json", "csv", "svg")))
def verify(suite, alphas, seed, trials, size, tol, zero_tol, out, formats):
    """Run verification suites on seeded random instances."""
    try:
        cfg = ExperimentConfig(suite=suite, seed=seed, trials=trials, size=size, tol=tol,
                               zero_tol=zero_tol, **({"alphas": alphas} if alphas else {}))
    except LipfreeError as exc:
        _fail_input(str(exc))
    report = run_suite(cfg)
    formats = formats or ("json",)
    if out:
        try:
            for p in emit_report(report, out, formats):
                click.echo(f"wrote {p}", err=True)
        except OSError as exc:
            _fail_input(str(exc))
    else:
        click.echo(report_json(report), nl=False)
    for name, s in report.summary().items():
        click.echo(f"{name}: {s['records']} records, {s['failed']} failed, "
                   f"worst slack {s['worst_slack']:.3e}", err=True)
    click.echo(f"runtime {report.runtime:.2f}s", err=True)
    sys.exit(0 if report.passed else EXIT_FAIL)


@main.command()
@click.argument("report_file", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(file_okay=False), required=True)
@click.option("--format", "formats", multiple=True, type=click.Choice(("json", "csv", "svg")))
def report(report_file, out, formats):
    """Re-emit a saved json report as csv and/or svg."""
    try:
        rep = Report.from_json(json.loads(Path(report_file).read_text()))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        _fail_input(f"cannot read report {report_file}: {exc}")
    for p in emit_report(rep, out, formats or ("csv",)):
        click.echo(f"wrote {p}", err=True)
    sys.exit(0 if rep.passed else EXIT_FAIL)


if __name__ == "__main__":
    main()
