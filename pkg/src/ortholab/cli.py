"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or an
argument outside the mathematical domain.
"""
from __future__ import annotations

import math
import sys

import click
import numpy as np

from . import __version__, density, dilog, montecarlo, polygon, verify
from ._backend import BACKEND
from .config import DEFAULTS, default_seed
from .errors import DomainError, OrtholabError
from .report import csv_string, fmt, text_table, to_json

EXIT_FAIL = 1
EXIT_USAGE = 2


def _fail_usage(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_USAGE)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


def _parse_point(token: str) -> float:
    token = token.strip().lower()
    if token in ("inf", "+inf", "infinity", "oo"):
        return math.inf
    if token in ("-inf", "-infinity"):
        return -math.inf
    try:
        return float(token)
    except ValueError:
        raise DomainError(f"cannot parse vertex {token!r}") from None


def _build_polygon(regular: int | None, vertices: str | None, degrees: str | None):
    given = [v is not None for v in (regular, vertices, degrees)]
    if sum(given) != 1:
        raise click.UsageError("give exactly one of --regular, --vertices, --degrees")
    if regular is not None:
        return polygon.regular_polygon(regular)
    if vertices is not None:
        return polygon.IdealPolygon.from_reals(_parse_point(t) for t in vertices.split(","))
    return polygon.IdealPolygon.from_degrees(float(t) for t in degrees.split(","))


class _DomainAwareGroup(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (OrtholabError, ValueError) as exc:
            if isinstance(exc, click.ClickException):
                raise
            _fail_usage(str(exc))


@click.group(cls=_DomainAwareGroup)
@click.version_option(__version__, prog_name="ortholab")
def main():
    """Rogers dilogarithm identities for ideal polygons."""


@main.command("eval", context_settings={"ignore_unknown_options": True})
@click.argument("function", type=click.Choice(["li2", "rogersL"]))
@click.argument("x", type=float)
def cmd_eval(function, x):
    """Evaluate li2(X) or the Rogers L-function at X."""
    fn = dilog.li2 if function == "li2" else dilog.rogers_l
    click.echo(fmt(fn(x)))


@main.command("polygon")
@click.option("--regular", type=int, help="Regular ideal n-gon.")
@click.option("--vertices", help="Comma-separated extended reals, e.g. 0,0.25,0.5,1,inf.")
@click.option("--degrees", help="Comma-separated angles on the circle, anticlockwise.")
@click.option("--format", "fmt_", type=click.Choice(["json", "csv", "text"]), default="json")
@click.option("--tol", type=float, default=DEFAULTS.identity_tol, show_default=True,
              help="Largest identity defect accepted.")
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True))
def cmd_polygon(regular, vertices, degrees, fmt_, tol, output):
    """Orthospectrum and identity defect of an ideal polygon."""
    poly = _build_polygon(regular, vertices, degrees)
    rep = polygon.polygon_report(poly)
    relation = None
    if regular is not None:
        terms = polygon.regular_terms(regular)
        lhs, rhs = polygon.finite_relation(regular)
        relation = {
            "terms": [{"b": b, "multiplicity": m} for b, m in terms],
            "lhs": lhs,
            "rhs": rhs,
            "text": " + ".join(f"{m}L({b:.12g})" for b, m in terms) + f" = {(regular - 3)}pi^2/6"
            if terms else "empty sum = 0",
        }
        rep["relation"] = relation
    if fmt_ == "json":
        text = to_json(rep)
    elif fmt_ == "csv":
        text = csv_string(["i", "j", "b", "l"], ([o["i"], o["j"], o["b"], o["l"]] for o in rep["ortho"]),
                          footer=[f"n={rep['n']}", f"defect={fmt(rep['defect'])}"]
                          + ([f"relation: {relation['text']}"] if relation else []))
    else:
        text = text_table(["i", "j", "b", "l"], ([o["i"], o["j"], o["b"], o["l"]] for o in rep["ortho"]))
        text += f"\n\nn = {rep['n']}  defect = {fmt(rep['defect'])}"
        if relation:
            text += f"\nrelation: {relation['text']}  (lhs - rhs = {fmt(relation['lhs'] - relation['rhs'])})"
    _emit(text, output)
    if abs(rep["defect"]) > tol:
        click.echo(f"identity defect {rep['defect']!r} exceeds {tol!r}", err=True)
        sys.exit(EXIT_FAIL)


@main.command("density")
@click.option("--l", "length", type=float, help="Orthogeodesic length.")
@click.option("--cusps", type=int, default=None, help="Emit the cusp density for N cusps instead.")
@click.option("--tmin", type=float, default=0.0, show_default=True)
@click.option("--tmax", type=float, default=40.0, show_default=True)
@click.option("--step", type=float, default=0.05, show_default=True)
@click.option("--tol", type=float, default=DEFAULTS.quadrature_tol, show_default=True,
              help="Relative tolerance of each density evaluation.")
@click.option("--mass-tol", type=float, default=DEFAULTS.mass_tol, show_default=True)
@click.option("--asymptote", is_flag=True, help="Add large-t ratio columns.")
@click.option("--g-oracle", "g_oracle", is_flag=True,
              help="Emit the table a, G_quadrature, G_closed instead of a profile.")
@click.option("--a", "a_values", type=float, multiple=True, help="Chart values for --g-oracle.")
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True))
def cmd_density(length, cusps, tmin, tmax, step, tol, mass_tol, asymptote, g_oracle, a_values, output):
    """CSV profile l,t,rho with a mass footer."""
    if g_oracle:
        avals = a_values or (-10.0, -3.0, -1.0, -0.3, -0.1)
        rows = [(a, density.big_g_quadrature(a), density.big_g(a)) for a in avals]
        worst = max(abs(q - c) for _, q, c in rows)
        _emit(csv_string(["a", "G_quadrature", "G_closed"], rows,
                         footer=[f"max_abs_diff={fmt(worst)}"]), output)
        if worst > 1e-6:
            sys.exit(EXIT_FAIL)
        return
    if (length is None) == (cusps is None):
        raise click.UsageError("give exactly one of --l and --cusps")
    if not step > 0.0 or tmax < tmin or tmin < 0.0:
        raise click.UsageError("need step > 0 and 0 <= tmin <= tmax")
    count = int(math.floor((tmax - tmin) / step + 1e-9)) + 1
    ts = tmin + step * np.arange(count)
    if cusps is not None:
        prof = density.profile(None, ts, n_cusps=cusps, tol=tol)
        expected = density.cusp_total_mass(cusps)
        rows = [(cusps, t, v) for t, v in zip(prof.t_grid, prof.values)]
        footer = [f"trapezoid_mass={fmt(prof.trapezoid_mass())}",
                  f"total_mass_closed={fmt(expected)}"]
        _emit(csv_string(["N", "t", "density"], rows, footer=footer), output)
        return
    prof = density.profile(length, ts, tol=tol)
    header = ["l", "t", "rho"]
    if asymptote:
        header += ["ratio", "ratio_over_r", "ratio_over_2cosh_l"]
        r_l = density.asymptotic_r(length)
        lim = density.asymptotic_ratio_limit(length)
    rows = []
    for t, v in zip(prof.t_grid, prof.values):
        row = [length, t, v]
        if asymptote:
            ratio = v * math.exp(2 * t) / (16 * t * t) if t > 0 else math.nan
            row += [ratio, ratio / r_l, ratio / lim]
        rows.append(row)
    mass = density.rho_mass(length, upper=tmax) if tmax > length else None
    F = density.total_mass_F(length)
    quad_mass = mass.value - mass.tail if mass else 0.0
    footer = [f"mass_quadrature={fmt(quad_mass)}",
              f"mass_trapezoid={fmt(prof.trapezoid_mass())}",
              f"total_mass_F={fmt(F)}",
              f"mass_error={fmt(quad_mass - F)}"]
    _emit(csv_string(header, rows, footer=footer), output)


@main.command("montecarlo")
@click.option("--regular", type=int)
@click.option("--vertices")
@click.option("--degrees")
@click.option("--class-a", "class_a", type=float, help="Sample one chart with this a < 0 instead.")
@click.option("--samples", type=int, default=1_000_000, show_default=True, help="Samples per class.")
@click.option("--seed", type=int, default=None, help="Defaults to ORTHOLAB_SEED or 0.")
@click.option("--bins", type=int, default=80, show_default=True)
@click.option("--tol", type=float, default=0.01, show_default=True,
              help="Relative tolerance on the total mass.")
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True))
def cmd_montecarlo(regular, vertices, degrees, class_a, samples, seed, bins, tol, output):
    """Seeded Monte Carlo measure with a JSON run report."""
    seed = default_seed() if seed is None else seed
    if class_a is not None:
        res = montecarlo.mc_class_mass(class_a, samples, seed)
        expected = -8.0 * dilog.rogers_l(class_a)
        report = {"seed": seed, "n_samples": samples, "a": class_a, "mass": res.mass,
                  "stderr": res.stderr, "expected": expected}
        _emit(to_json(report), output)
        if abs(res.mass - expected) > 3.0 * res.stderr:
            sys.exit(EXIT_FAIL)
        return
    poly = _build_polygon(regular, vertices, degrees)
    measure = montecarlo.mc_polygon_measure(poly, samples, seed, bins)
    _emit(to_json(montecarlo.run_report(measure)), output)
    if abs(measure.total_mass / measure.expected_total - 1.0) > tol:
        sys.exit(EXIT_FAIL)


@main.command("lewin")
@click.option("--R", "R", type=int, default=10_000, show_default=True)
@click.option("--format", "fmt_", type=click.Choice(["text", "csv"]), default="text")
def cmd_lewin(R, fmt_):
    """Partial sums of L(1/r^2) for r = 2..R with the tail estimate."""
    if R < 2:
        raise DomainError("R must be at least 2")
    checkpoints = sorted({r for r in (10, 100, 1000, 10_000, 100_000, 1_000_000) if r < R} | {R})
    target = math.pi ** 2 / 6
    rows = []
    for r in checkpoints:
        s = polygon.lewin_partial_sum(r)
        rows.append((r, s, target - s, polygon.lewin_tail_estimate(r)))
    header = ["R", "partial_sum", "pi2_over_6_minus_sum", "tail_estimate"]
    click.echo(csv_string(header, rows) if fmt_ == "csv" else text_table(header, rows))


@main.command("verify")
@click.argument("suite", type=click.Choice(("all",) + verify.SUITES), default="all")
@click.option("--seed", type=int, default=None, help="Defaults to ORTHOLAB_SEED or 0.")
@click.option("--format", "fmt_", type=click.Choice(["text", "json"]), default="text")
def cmd_verify(suite, seed, fmt_):
    """Run acceptance checks; exit 1 if any fails."""
    seed = default_seed() if seed is None else seed
    results = verify.run(suite, seed)
    if fmt_ == "json":
        click.echo(to_json({"seed": seed, "backend": BACKEND, "results": [vars(r) for r in results]}))
    else:
        rows = [(r.key, r.suite, "PASS" if r.passed else "FAIL", r.measured, r.tolerance,
                 f"{r.seconds:.2f}", r.title + (f" [{r.detail}]" if r.detail else ""))
                for r in results]
        click.echo(text_table(["#", "suite", "status", "measured", "tolerance", "sec", "check"], rows))
        for r in results:
            if "digest" in r.extra:
                click.echo(f"digest[{r.key}] = {r.extra['digest']}")
    if not all(r.passed for r in results):
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":
    main()
