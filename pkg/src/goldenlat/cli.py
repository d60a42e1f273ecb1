"""Command line interface.

Exit codes: 0 success or match, 1 mathematical mismatch, 2 usage error,
3 resource problem (precision too low, search timed out).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import json
import logging
import sys

import click

from . import hmf
from .constructions import (
    GoldenImportError, e8_golden_inputs, f4, f4_perp_f4, import_golden_candidate,
)
from .hmf import InsufficientPrecision
from .qseries import QExp
from .rlattice import (
    RGram, galois_check, golden_check, goldenex, hilbert_theta, modular_family,
    trace_gram,
)
from .table import EXPECTED_TABLE

EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


@dataclass
class Config:
    precision: int = 8
    threads: int = 1
    fmt: str = "pretty"
    budget: float = 60.0


def _emit(data, fmt: str, tsv_rows=None, pretty=None):
    if fmt == "json":
        click.echo(json.dumps(data, indent=2, default=str))
    elif fmt == "tsv" and tsv_rows is not None:
        for row in tsv_rows:
            click.echo("\t".join(str(c) for c in row))
    elif pretty is not None:
        click.echo(pretty)
    else:
        click.echo(json.dumps(data, indent=2, default=str))


def _prec(ctx, value):
    return value if value is not None else ctx.obj.precision


@click.group(context_settings={"auto_envvar_prefix": "GOLDENLAT", "help_option_names": ["-h", "--help"]})
@click.option("--prec", type=click.IntRange(min=1), default=8, show_default=True, help="Rows of the (q0, q1)-expansion.")
@click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes for enumeration.")
@click.option("--format", "fmt", type=click.Choice(["json", "tsv", "pretty"]), default="pretty", show_default=True)
@click.option("--budget", type=click.FloatRange(min=0, min_open=True), default=60.0, show_default=True, help="Seconds for each isometry search.")
@click.option("-v", "--verbose", is_flag=True)
@click.pass_context
def main(ctx, prec, threads, fmt, budget, verbose):
    """Golden lattices over Z[theta] and symmetric Hilbert modular forms for Q(sqrt 5)."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    ctx.obj = Config(prec, threads, fmt, budget)


# ---------------------------------------------------------------------------
# hmf
# ---------------------------------------------------------------------------

@main.group("hmf")
def hmf_group():
    """Symmetric Hilbert modular forms."""


def _check_hmf_prec(prec):
    if prec < 3:
        raise click.BadParameter("hmf commands need --prec >= 3", param_hint="--prec")


@hmf_group.command("extremal")
@click.option("-w", "--weight", type=int, required=True)
@click.option("--prec", type=click.IntRange(min=1), default=None)
@click.pass_context
def cmd_hmf_extremal(ctx, weight, prec):
    """Extremal form of the given weight and its kissing numbers."""
    prec = _prec(ctx, prec)
    _check_hmf_prec(prec)
    if weight < 2 or weight % 2:
        raise click.BadParameter("weight must be even and >= 2", param_hint="-w")
    try:
        r = hmf.extremal_form(weight, prec)
    except InsufficientPrecision as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_RESOURCE)
    data = r.to_json()
    data["prop_nu_bound"] = hmf.check_nu_bound(r)
    _emit(
        data, ctx.obj.fmt,
        tsv_rows=[(r.weight, f"({r.s},{r.t})", r.s_eta, r.s_one, r.pm)],
        pretty=(f"weight {r.weight}: nu(f-1) = ({r.s},{r.t})  s_eta = {r.s_eta}  "
                f"s_1 = {r.s_one}  {r.pm}  unique = {r.unique}"),
    )
    if not r.unique:
        ctx.exit(EXIT_MISMATCH)


@hmf_group.command("generator")
@click.argument("name", type=click.Choice(["A2", "B6", "C10", "X12"]))
@click.option("--prec", type=click.IntRange(min=1), default=None)
@click.pass_context
def cmd_hmf_generator(ctx, name, prec):
    """Dump a generator's (q0, q1)-expansion."""
    prec = _prec(ctx, prec)
    _check_hmf_prec(prec)
    g = hmf.generators(prec)
    if name == "X12":
        f = (g.A2 * g.C10 - g.B6 ** 2) * Fraction(1, 4)
    else:
        f = getattr(g, name)
    _emit(f.to_json(), ctx.obj.fmt, pretty=f.dumps().rstrip())


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

@main.group("table")
def table_group():
    """The extremal-form table."""


def _load_expected(path):
    with open(path) as fh:
        rows = json.load(fh)
    for r in rows:
        r["nu"] = tuple(r["nu"])
    return rows


@table_group.command("reproduce")
@click.option("--prec", type=click.IntRange(min=1), default=None)
@click.option("--expected", "expected_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON list of rows to diff against instead of the built-in table.")
@click.pass_context
def cmd_table_reproduce(ctx, prec, expected_file):
    """Recompute every table row and diff it against the expected values."""
    prec = _prec(ctx, prec)
    _check_hmf_prec(prec)
    expected = _load_expected(expected_file) if expected_file else EXPECTED_TABLE
    results, failures = [], []
    for row in expected:
        try:
            results.append(hmf.extremal_form(row["weight"], prec))
        except InsufficientPrecision as exc:
            failures.append(str(exc))
    if failures:
        for f in failures:
            click.echo(f"insufficient precision: {f}", err=True)
        ctx.exit(EXIT_RESOURCE)
    mismatches = hmf.diff_table(results, expected)
    rows = [("weight", "nu", "s_eta", "s_1", "sub")]
    rows += [(r.weight, f"({r.s},{r.t})", r.s_eta, r.s_one, r.pm) for r in results]
    bad_weights = {m[0] for m in mismatches}
    summary = f"{len(expected) - len(bad_weights)}/{len(expected)} rows match"
    if ctx.obj.fmt == "json":
        _emit({"rows": [r.to_json() for r in results], "mismatches": mismatches, "summary": summary}, "json")
    else:
        for row in rows:
            click.echo("\t".join(str(c) for c in row))
        for w, key, want, got in mismatches:
            click.echo(f"mismatch weight {w} {key}: expected {want}, got {got}")
        click.echo(summary)
    if mismatches:
        ctx.exit(EXIT_MISMATCH)


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------

CONSTRUCTIONS = ("f4", "f4perp2", "e8-golden")


def _built_in(name: str) -> RGram:
    if name == "f4":
        return f4()
    if name == "f4perp2":
        return f4_perp_f4()
    t, T, _, z = e8_golden_inputs()
    return goldenex(t, T, z_source=z).gram


def _read_rgram(path: str) -> RGram:
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.ClickException(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return RGram.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise click.ClickException(f"{path}: invalid RGram: {exc}") from None


def _lattice_arg(construct, file):
    if bool(construct) == bool(file):
        raise click.UsageError("give exactly one of --construct or --file")
    return _built_in(construct) if construct else _read_rgram(file)


def lattice_source(f):
    f = click.option("--file", "file", type=click.Path(exists=True, dir_okay=False), default=None, help="RGram JSON file.")(f)
    f = click.option("--construct", type=click.Choice(CONSTRUCTIONS), default=None, help="Built-in lattice.")(f)
    return f


@main.group("lattice")
def lattice_group():
    """Z[theta]-lattices, trace lattices and modular families."""


@lattice_group.command("construct")
@click.argument("name", type=click.Choice(CONSTRUCTIONS))
@click.pass_context
def cmd_construct(ctx, name):
    """Emit a built-in lattice as RGram JSON."""
    click.echo(json.dumps(_built_in(name).to_json()))


@lattice_group.command("theta")
@lattice_source
@click.option("--prec", type=click.IntRange(min=1), default=None)
@click.pass_context
def cmd_theta(ctx, construct, file, prec):
    """Hilbert theta series by enumeration."""
    g = _lattice_arg(construct, file)
    theta = hilbert_theta(g, _prec(ctx, prec), ctx.obj.threads)
    _emit(
        theta.to_json(), ctx.obj.fmt,
        tsv_rows=[(i, j, c) for (i, j), c in theta.items()],
        pretty=theta.dumps().rstrip(),
    )


@lattice_group.command("trace")
@lattice_source
@click.option("--alpha", nargs=2, type=str, default=("2/5", "-1/5"), show_default=True,
              help="alpha = a + b*theta as two rationals; default eta^-1.")
@click.pass_context
def cmd_trace(ctx, construct, file, alpha):
    """Integer Gram matrix of the trace lattice L_alpha."""
    from fractions import Fraction
    from .ring import KElem

    g = _lattice_arg(construct, file)
    t = trace_gram(g, KElem(Fraction(alpha[0]), Fraction(alpha[1])))
    click.echo(json.dumps({"m": len(t), "entries": t}))


@lattice_group.command("golden-check")
@lattice_source
@click.option("--prec", type=click.IntRange(min=1), default=None)
@click.pass_context
def cmd_golden_check(ctx, construct, file, prec):
    """Is the Hilbert theta series the extremal form of weight n/2?"""
    g = _lattice_arg(construct, file)
    prec = prec if prec is not None else min(ctx.obj.precision, 2)
    try:
        ok, report = golden_check(g, prec, ctx.obj.threads)
    except InsufficientPrecision as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_RESOURCE)
    except ValueError as exc:
        click.echo(f"not golden: {exc}")
        ctx.exit(EXIT_MISMATCH)
    _emit(report.to_json(), ctx.obj.fmt, pretty=(
        f"golden: {str(ok).lower()}  weight {report.weight}  nu = {report.nu}  "
        f"min(L_eta^-1) = {report.min_eta}  min(L_1) = {report.min_one}  "
        f"unimodular bound {report.unimodular_bound} ({'extremal' if report.eta_extremal else 'not extremal'})"
    ))
    if not ok:
        ctx.exit(EXIT_MISMATCH)


@lattice_group.command("family")
@lattice_source
@click.option("--a", "a", type=click.IntRange(min=0), required=True)
@click.pass_context
def cmd_family(ctx, construct, file, a):
    """The (a^2 + 5a + 5)-modular trace lattice L_{1 + a eta^-1}."""
    g = _lattice_arg(construct, file)
    t, cert = modular_family(g, a, budget=ctx.obj.budget, workers=ctx.obj.threads)
    cert = dict(cert, gram={"m": len(t), "entries": t})
    _emit(cert, ctx.obj.fmt, pretty=(
        f"a = {a}: p = {cert['p']}  min = {cert['min']} (bound {cert['min_bound']})  "
        f"kissing = {cert['kissing']}  det = {cert['det']} (= p^{g.n}: {cert['det_ok']})  "
        f"modular: {str(cert['modular']).lower()}"
    ))
    if cert["modular"] == "undecided":
        ctx.exit(EXIT_RESOURCE)
    if not (cert["modular"] is True and cert["det_ok"] and cert["min_ok"]):
        ctx.exit(EXIT_MISMATCH)


@lattice_group.command("import-golden")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--prec", type=click.IntRange(min=1), default=None)
@click.pass_context
def cmd_import_golden(ctx, path, prec):
    """Validate a {gram, T, sigma?, label} file and test the induced R-lattice."""
    try:
        t, T, sigma, label = import_golden_candidate(path)
    except GoldenImportError as exc:
        for p in exc.problems:
            click.echo(f"rejected: {p}", err=True)
        ctx.exit(EXIT_MISMATCH)
    structure = goldenex(t, T)
    g = structure.gram
    prec = prec if prec is not None else 2
    try:
        ok, report = golden_check(g, prec, ctx.obj.threads)
    except InsufficientPrecision as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_RESOURCE)
    out = {"label": label, "rank": g.n, "golden": ok, "report": report.to_json(), "gram": g.to_json()}
    if sigma is not None:
        P = structure.basis_change
        from .linalg import int_inverse, matmul
        # sigma in the R-basis coordinates
        out["galois"] = galois_check(g, matmul(int_inverse(P), matmul(sigma, P)))
    _emit(out, ctx.obj.fmt, pretty=(
        f"{label or path}: rank {g.n} over Z[theta]  golden: {str(ok).lower()}  "
        f"nu = {report.nu}  s_eta-row min {report.min_eta}  min(L_1) = {report.min_one}"
        + (f"  galois: {str(out['galois']).lower()}" if "galois" in out else "")
    ))
    if not ok:
        ctx.exit(EXIT_MISMATCH)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
