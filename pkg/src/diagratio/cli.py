"""Command-line front end.

Exit codes: 0 on success, 1 when a mathematical check fails (certificate
residual, a violated bound, a failed construction), 2 on bad input.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
import sys
from pathlib import Path

import click

from . import __version__
from .certificate import transcribe_f, verify_certificate
from .construct import ConstructionSpec, construct, verify_construction
from .geom import (
    ConvexityError,
    GeometryError,
    Polygon,
    area_ratio,
    cevian_polygon,
    inner_diagonal_polygon,
    marginal_sum,
    peripheral_areas,
    peripheral_sum,
    polygon_area,
)
from .optimize import (
    MAX_RATIO_FLOAT,
    OptimizerConfig,
    maximize,
    regular_ratio,
    sample_bounds,
    sweep_r,
)
from .pentagon import gauss_area, to_xy, vertices_to_params
from .poly import SparsePoly

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _fail(message: str, code: int = EXIT_USAGE):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text.rstrip("\n"))


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _format(fmt: str | None, out: str | None, default: str = "json") -> str:
    if fmt:
        return fmt
    if out and out.lower().endswith(".csv"):
        return "csv"
    return default


def _r_value(r: str) -> object:
    """Parse r as an exact rational when written like one, else as a float."""
    try:
        v = Fraction(r)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a number: {r!r}") from None
    if not (0 < v <= 1):
        raise click.BadParameter(f"r must lie in (0, 1], got {r}")
    return v if ("/" in r or v.denominator == 1) else float(r)


@click.group()
@click.version_option(__version__, prog_name="diagratio")
def main():
    """Area ratios of polygons cut out by short diagonals and cevians."""


@main.command()
@click.option("--emit-f", "emit_f", type=click.Path(dir_okay=False), help="Write the canonical f as JSON.")
@click.option("--f-json", "f_json", type=click.Path(exists=True, dir_okay=False), help="Check this f instead of the built-in one.")
def verify(emit_f, f_json):
    """Check the positivity certificate exactly."""
    f = None
    if f_json:
        try:
            f = SparsePoly.from_json(json.loads(Path(f_json).read_text()))
        except (ValueError, KeyError, TypeError) as exc:
            _fail(f"cannot read polynomial from {f_json}: {exc}")
    report = verify_certificate(f)
    if emit_f:
        Path(emit_f).write_text(_dumps(transcribe_f().to_json()) + "\n")
    click.echo(_dumps(report.to_json()))
    sys.exit(EXIT_OK if report.ok else EXIT_FAILED)


def _load_polygon(path: str) -> Polygon:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        _fail(f"{path} is not valid JSON: {exc}")
    try:
        return Polygon.from_json(data)
    except (GeometryError, ValueError) as exc:
        _fail(f"bad polygon in {path}: {exc}")


def _num(v):
    return float(v)


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False), help="Polygon JSON file.")
@click.option("--r", "r", default="1", show_default=True, help="Cevian ratio in (0, 1]; fractions like 1/2 stay exact.")
def ratio(input_path, r):
    """Measure area(K_r)/area(K) and related areas of a polygon."""
    P = _load_polygon(input_path)
    rv = _r_value(r)
    try:
        inner = inner_diagonal_polygon(P) if (rv == 1 and P.n >= 4) else cevian_polygon(P, rv)
    except ConvexityError as exc:
        _fail(f"polygon is not strictly convex counterclockwise: reflex vertex index {exc.vertex}")
    except GeometryError as exc:
        _fail(str(exc))
    area = polygon_area(P)
    inner_area = abs(polygon_area(inner))
    out = {
        "n": P.n,
        "r": _num(rv),
        "area": _num(area),
        "inner_area": _num(inner_area),
        "ratio": _num(area_ratio(P, rv)),
        "omega": _num(peripheral_sum(P)),
        "phi": _num(marginal_sum(P)) if P.n >= 5 else None,
    }
    if P.is_exact:
        out["exact"] = {"area": str(area), "ratio": str(inner_area / area)}
    if P.n == 5:
        params = vertices_to_params(P)
        x, y = to_xy(params)
        sig = peripheral_areas(P)
        g = gauss_area(sig)
        out["params"] = params.to_json(exact=False)
        out["xy"] = [_num(x), _num(y)]
        out["sigmas"] = [_num(s) for s in sig]
        out["gauss_residual"] = abs(_num(g) - _num(area))
    click.echo(_dumps(out))


def _config(r, starts, seed, tol, max_iters) -> OptimizerConfig:
    try:
        return OptimizerConfig(starts=starts, seed=seed, tol=tol, max_iters=max_iters, r=r)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None


_fmt_opt = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None, help="Output format (default from --out suffix, else json).")
_out_opt = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write to this file instead of stdout.")


@main.command()
@click.option("--r", type=float, default=1.0, show_default=True)
@click.option("--starts", type=click.IntRange(min=1), default=64, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=1e-12, show_default=True)
@click.option("--max-iters", type=click.IntRange(min=1), default=2000, show_default=True)
@_out_opt
@_fmt_opt
def optimize(r, starts, seed, tol, max_iters, out, fmt):
    """Maximise the pentagon ratio by multi-start Nelder-Mead."""
    res = maximize(_config(r, starts, seed, tol, max_iters))
    reg = regular_ratio(r)
    if _format(fmt, out) == "csv":
        a, b, c, d = map(float, res.best_params.astuple())
        text = _csv(
            ("r", "best_ratio", "regular_ratio", "gap", "best_a", "best_b", "best_c", "best_d"),
            [(float(r), res.best_ratio, reg, res.best_ratio - reg, a, b, c, d)],
        )
    else:
        data = res.to_json()
        data["regular_ratio"] = reg
        data["gap"] = res.best_ratio - reg
        text = _dumps(data)
    _emit(text, out)
    if r == 1 and res.best_ratio > MAX_RATIO_FLOAT + 1e-9:
        _fail(f"best ratio {res.best_ratio!r} exceeds the proven maximum", EXIT_FAILED)


@main.command()
@click.option("--r-from", "r_from", type=float, default=0.5, show_default=True)
@click.option("--r-to", "r_to", type=float, default=1.0, show_default=True)
@click.option("--steps", type=click.IntRange(min=2), default=26, show_default=True)
@click.option("--starts", type=click.IntRange(min=1), default=64, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=1e-12, show_default=True)
@click.option("--max-iters", type=click.IntRange(min=1), default=2000, show_default=True)
@_out_opt
@_fmt_opt
def sweep(r_from, r_to, steps, starts, seed, tol, max_iters, out, fmt):
    """Optimise over a grid of r and locate where the regular pentagon stops winning."""
    if not (0 < r_from < r_to <= 1):
        raise click.BadParameter("need 0 < r-from < r-to <= 1")
    table = sweep_r(r_from, r_to, steps, _config(r_to, starts, seed, tol, max_iters))
    text = table.to_csv() if _format(fmt, out) == "csv" else _dumps(table.to_json())
    _emit(text, out)
    click.echo(f"crossover estimate: {table.crossover}", err=True)


@main.command("construct")
@click.option("--mode", type=click.Choice(["small", "large", "small_ratio", "large_ratio"]), required=True)
@click.option("--n", type=int, required=True)
@click.option("--eps", type=float, required=True)
@_out_opt
def construct_cmd(mode, n, eps, out):
    """Build a witness polygon and verify it; the polygon goes to --out."""
    try:
        spec = ConstructionSpec(n, eps, mode)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from None
    P = construct(spec)
    report = verify_construction(P, spec)
    if out:
        Path(out).write_text(_dumps(P.to_json()) + "\n")
        click.echo(_dumps(report))
    else:
        click.echo(_dumps({"polygon": P.to_json(), "verification": report}))
    sys.exit(EXIT_OK if report["ok"] else EXIT_FAILED)


@main.command()
@click.option("--shape", type=click.Choice(["triangle", "quad", "ngon"]), required=True)
@click.option("--n", type=int, default=None, help="Vertex count for --shape ngon.")
@click.option("--r", type=float, required=True)
@click.option("--samples", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@_out_opt
@_fmt_opt
def bounds(shape, n, r, samples, seed, out, fmt):
    """Sample random convex shapes and check the known K_r bounds."""
    if shape == "ngon" and (n is None or n < 3):
        raise click.BadParameter("--shape ngon needs --n >= 3")
    if not (0 < r <= 1) or (shape == "quad" and r >= 1):
        raise click.BadParameter(f"r={r} is outside the range for {shape}")
    rep = sample_bounds(shape, r, samples, seed=seed, n=n)
    if _format(fmt, out) == "csv":
        text = _csv(
            ("shape", "n", "r", "samples", "bound", "lower", "upper", "min_ratio", "max_ratio", "violations"),
            [(rep.shape, rep.n, rep.r, rep.samples, rep.bound,
              math.nan if rep.lower is None else rep.lower,
              math.nan if rep.upper is None else rep.upper,
              rep.min_ratio, rep.max_ratio, rep.violation_count)],
        )
    else:
        text = _dumps(rep.to_json())
    _emit(text, out)
    sys.exit(EXIT_OK if rep.ok else EXIT_FAILED)


if __name__ == "__main__":  # pragma: no cover
    main()
