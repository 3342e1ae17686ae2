"""Command-line front end.

Subcommands
-----------
spectrum   merged two-layer spectrum with the distribution-function sweep
forward    per-wavenumber eigenvalue pairs and asymptotic ratios
modes      vertical mode profiles and Rayleigh-quadrature checks
inverse    recover (rho, h) from a measurement file
check      run the invariant battery

Results are CSV (sweeps) or JSON (structured records); ``--plot`` renders a
PNG figure next to the delimited output.  Exit codes: 0 success, 2 config
parse error, 3 validation error, 4 admissibility, 5 inconsistent density
ratio, 6 no root, 7 ambiguous roots, 8 infinite depth, 9 numerical fault,
1 check-suite failure.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path

import click
import numpy as np

from . import inverse as inv
from . import reporting
from .checks import run_checks
from .dispersion import (
    ContainerGeometry,
    Stratification,
    asymptotic_pair,
    homogeneous_eigenvalue,
    quadratic_residual,
    two_layer_pair,
)
from .enumeration import distribution_function, enumerate_spectrum, weyl_prefactor, weyl_ratio
from .errors import (
    AdmissibilityError,
    AmbiguousRootsError,
    ConfigError,
    InconsistentRhoError,
    InfiniteDepthError,
    NoRootError,
    NumericalFaultError,
    Slosh2Error,
    ValidationError,
)
from .membrane import (
    Disc,
    MembraneEigenvalue,
    Rectangle,
    Tabulated,
    membrane_spectrum,
)
from .modes import build_potential_pair, coefficients, rayleigh_two_layer

_EXIT_CODES = [
    (ConfigError, 2),
    (AdmissibilityError, 4),
    (InconsistentRhoError, 5),
    (NoRootError, 6),
    (AmbiguousRootsError, 7),
    (InfiniteDepthError, 8),
    (NumericalFaultError, 9),
    (ValidationError, 3),
]


def _exit_code(exc: Slosh2Error) -> int:
    for etype, code in _EXIT_CODES:
        if isinstance(exc, etype):
            return code
    return 9


def _fail(exc: Slosh2Error) -> None:
    reason = str(exc).replace("\n", " ")
    code = _exit_code(exc)
    click.echo(f"error: code={code} class={type(exc).__name__} reason={reason}", err=True)
    sys.exit(code)


def parse_cross_section(doc: dict):
    kind = doc.get("type")
    try:
        if kind == "rectangle":
            return Rectangle(float(doc["side_a"]), float(doc["side_b"]))
        if kind == "disc":
            return Disc(float(doc["radius"]))
        if kind == "tabulated":
            entries = tuple(
                MembraneEigenvalue(
                    float(e["k_squared"]),
                    int(e.get("multiplicity", 1)),
                    tuple(e.get("mode_ids", [f"t{i}"])),
                )
                for i, e in enumerate(doc["entries"])
            )
            return Tabulated(entries, float(doc["area"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad cross-section document: {exc}") from exc
    raise ConfigError(f"unknown cross-section type {kind!r}")


def parse_geometry(path: str) -> ContainerGeometry:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read geometry file {path}: {exc}") from exc
    if "cross_section" not in doc or "depth" not in doc:
        raise ConfigError("geometry document needs 'cross_section' and 'depth'")
    cs = parse_cross_section(doc["cross_section"])
    depth = doc["depth"]
    depth_value = math.inf if depth in ("infinite", "inf") else float(depth)
    return ContainerGeometry(cs, depth_value)


def parse_measurement(path: str) -> inv.Measurement:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read measurement file {path}: {exc}") from exc
    try:
        geom = ContainerGeometry(
            parse_cross_section(doc["geometry"]["cross_section"]),
            math.inf
            if doc["geometry"]["depth"] in ("infinite", "inf")
            else float(doc["geometry"]["depth"]),
        )
        elevation = [((float(r[0]), float(r[1])), float(r[2])) for r in doc["elevation"]]
        return inv.Measurement.from_geometry(
            geom, float(doc["nu_1"]), float(doc["nu_N"]), elevation
        )
    except InfiniteDepthError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad measurement document: {exc}") from exc


def _geometry_doc(geom: ContainerGeometry) -> dict:
    cs = geom.cross_section
    if isinstance(cs, Rectangle):
        cs_doc = {"type": "rectangle", "side_a": cs.side_a, "side_b": cs.side_b}
    elif isinstance(cs, Disc):
        cs_doc = {"type": "disc", "radius": cs.radius}
    else:
        cs_doc = {
            "type": "tabulated",
            "area": cs.area,
            "entries": [
                {"k_squared": e.k_squared, "multiplicity": e.multiplicity,
                 "mode_ids": list(e.mode_ids)}
                for e in cs.entries
            ],
        }
    return {"cross_section": cs_doc,
            "depth": "infinite" if geom.is_infinite else geom.depth}


@click.group()
@click.version_option(reporting.TOOL_VERSION, prog_name="slosh2")
def main() -> None:
    """Two-layer sloshing spectra and inverse stratification recovery."""


_geometry_opt = click.option(
    "--geometry", "geometry_path", required=True, type=click.Path(), help="geometry JSON file"
)
_out_opt = click.option("--out", "out_path", required=True, type=click.Path(), help="output file")
_format_opt = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True
)
_plot_opt = click.option("--plot", is_flag=True, help="render a PNG figure next to the output")
_gravity_opt = click.option(
    "--gravity", type=float, default=None,
    help="if set, also report radian frequencies omega = sqrt(nu * g)",
)


@main.command()
@_geometry_opt
@click.option("--rho", type=float, required=True, help="density ratio rho_2/rho_1 > 1")
@click.option("--h", "h_depth", type=float, required=True, help="interface depth")
@click.option("--nu-max", type=float, required=True, help="enumerate eigenvalues up to this value")
@click.option("--weyl-points", type=int, default=16, show_default=True)
@_out_opt
@_format_opt
@_plot_opt
@_gravity_opt
def spectrum(geometry_path, rho, h_depth, nu_max, weyl_points, out_path, fmt, plot, gravity):
    """Merged two-layer spectrum plus the distribution-function sweep."""
    config = {
        "command": "spectrum", "geometry": geometry_path, "rho": rho, "h": h_depth,
        "nu_max": nu_max, "weyl_points": weyl_points, "format": fmt, "gravity": gravity,
    }
    try:
        geom = parse_geometry(geometry_path)
        strat = Stratification(rho, h_depth)
        spec = enumerate_spectrum(geom, strat, nu_max)
        sweep_nus = [nu_max * (i + 1) / weyl_points for i in range(weyl_points)]
        ratios = weyl_ratio(geom, strat, sweep_nus, spectrum=spec)
        counts = [distribution_function(spec, nu) for nu in sweep_nus]
    except Slosh2Error as exc:
        _fail(exc)

    rows = [(e.nu, e.branch, e.k_squared, e.multiplicity) for e in spec.entries]
    columns = ["nu", "branch", "k_squared", "multiplicity"]
    if gravity is not None:
        rows = [r + (math.sqrt(r[0] * gravity),) for r in rows]
        columns.append("omega")
    out = Path(out_path)
    if fmt == "csv":
        reporting.write_csv(out, columns, rows, config)
    else:
        payload = {"entries": [dict(zip(columns, r)) for r in rows], "nu_max": nu_max}
        reporting.write_json(out, payload, config)
    sweep_rows = list(zip(sweep_nus, counts, ratios))
    reporting.write_csv(
        out.with_name(out.stem + "_distribution.csv"),
        ["nu", "count", "weyl_ratio"], sweep_rows, config,
    )
    reporting.write_json(
        out.with_name(out.stem + "_weyl.json"),
        {"nu": sweep_nus, "ratio": ratios, "prefactor": weyl_prefactor(rho)},
        config,
    )
    if plot:
        reporting.render_spectrum_figure(
            spec.entries, nu_max, list(zip(sweep_nus, ratios)), out.with_suffix(".png")
        )
    click.echo(f"{len(spec.entries)} spectrum entries written to {out}")


@main.command()
@_geometry_opt
@click.option("--rho", type=float, required=True)
@click.option("--h", "h_depth", type=float, required=True)
@click.option("--k-max", type=float, default=None, help="include membrane levels with k <= k-max")
@click.option("--nu-max", type=float, default=None, help="alternative bound: nu_W(k) <= nu-max")
@click.option("--measurement-out", type=click.Path(), default=None,
              help="also write a synthetic measurement JSON for the inverse demo")
@click.option("--branch", type=click.Choice(["minus", "plus"]), default="minus",
              show_default=True, help="branch for the synthetic measurement")
@click.option("--samples", type=int, default=64, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True,
              help="seed for synthetic elevation sample points")
@_out_opt
@_format_opt
@_plot_opt
@_gravity_opt
def forward(geometry_path, rho, h_depth, k_max, nu_max, measurement_out, branch,
            samples, seed, out_path, fmt, plot, gravity):
    """Per-wavenumber pairs, residuals, and asymptotic ratios."""
    config = {
        "command": "forward", "geometry": geometry_path, "rho": rho, "h": h_depth,
        "k_max": k_max, "nu_max": nu_max, "format": fmt, "gravity": gravity,
        "measurement_out": measurement_out, "branch": branch, "samples": samples, "seed": seed,
    }
    try:
        geom = parse_geometry(geometry_path)
        strat = Stratification(rho, h_depth)
        if geom.is_infinite:
            raise ValidationError("forward pairs need finite depth")
        if k_max is None and nu_max is None:
            raise ConfigError("one of --k-max or --nu-max is required")
        if k_max is None:
            k_max = nu_max / math.tanh(nu_max * geom.depth) * 1.05 + 1.0
        levels = membrane_spectrum(geom.cross_section, k_max**2)
        rows = []
        for lv in levels:
            pair = two_layer_pair(lv.k, geom, strat)
            am, ap = asymptotic_pair(lv.k, rho)
            rows.append({
                "k": lv.k, "k_squared": lv.k_squared, "multiplicity": lv.multiplicity,
                "nu_minus": pair.nu_minus, "nu_plus": pair.nu_plus,
                "nu_w": homogeneous_eigenvalue(lv.k, geom.depth),
                "asym_minus": am, "asym_plus": ap,
                "ratio_minus": pair.nu_minus / am, "ratio_plus": pair.nu_plus / ap,
                "residual_minus": quadratic_residual(pair.nu_minus, lv.k, geom, strat),
                "residual_plus": quadratic_residual(pair.nu_plus, lv.k, geom, strat),
            })
        if measurement_out is not None:
            meas = inv.synthesize_measurement(geom, strat, branch, samples, seed)
            _write_measurement(meas, measurement_out)
    except Slosh2Error as exc:
        _fail(exc)

    columns = list(rows[0].keys()) if rows else ["k"]
    if gravity is not None and rows:
        for r in rows:
            r["omega_minus"] = math.sqrt(r["nu_minus"] * gravity)
            r["omega_plus"] = math.sqrt(r["nu_plus"] * gravity)
        columns = list(rows[0].keys())
    out = Path(out_path)
    if fmt == "csv":
        reporting.write_csv(out, columns, [tuple(r[c] for c in columns) for r in rows], config)
    else:
        reporting.write_json(out, {"pairs": rows}, config)
    if plot and rows:
        reporting.render_forward_figure(rows, out.with_suffix(".png"))
    click.echo(f"{len(rows)} membrane levels written to {out}")


def _write_measurement(meas: inv.Measurement, path) -> None:
    doc = {
        "nu_1": meas.nu_1,
        "nu_N": meas.nu_N,
        "geometry": _geometry_doc(meas.geometry),
        "elevation": [[p[0], p[1], v] for p, v in meas.elevation],
    }
    Path(path).write_text(reporting.canonical_json(doc) + "\n", encoding="utf-8")


@main.command()
@_geometry_opt
@click.option("--rho", type=float, required=True)
@click.option("--h", "h_depth", type=float, required=True)
@click.option("--count", type=int, default=3, show_default=True, help="membrane levels to export")
@click.option("--quadrature-n", type=int, default=64, show_default=True)
@click.option("--profile-points", type=int, default=101, show_default=True)
@_out_opt
@_plot_opt
def modes(geometry_path, rho, h_depth, count, quadrature_n, profile_points, out_path, plot):
    """Vertical mode profiles and Rayleigh-quadrature checks."""
    config = {
        "command": "modes", "geometry": geometry_path, "rho": rho, "h": h_depth,
        "count": count, "quadrature_n": quadrature_n, "profile_points": profile_points,
    }
    try:
        geom = parse_geometry(geometry_path)
        strat = Stratification(rho, h_depth)
        if geom.is_infinite:
            raise ValidationError("mode profiles need finite depth")
        bound = 4.0
        levels = membrane_spectrum(geom.cross_section, bound)
        while len(levels) < count:
            bound *= 2.0
            levels = membrane_spectrum(geom.cross_section, bound)
        levels = levels[:count]
        rows = []
        checks = []
        profiles = []
        for lv in levels:
            pair = two_layer_pair(lv.k, geom, strat)
            for branch, nu in (("minus", pair.nu_minus), ("plus", pair.nu_plus)):
                mc = coefficients(nu, lv.k, geom, strat)
                pp = build_potential_pair(mc, lv.mode_ids[0], geom, strat)
                quotient = rayleigh_two_layer(pp, geom, strat, quadrature_n)
                checks.append({
                    "k_squared": lv.k_squared, "branch": branch, "nu": nu,
                    "rayleigh_quotient": quotient,
                    "quotient_over_nu": quotient / nu,
                })
                ys = np.linspace(-geom.depth, 0.0, profile_points)
                vals = np.where(ys >= -strat.h, pp.w1(ys), pp.w2(ys))
                label = f"k2={lv.k_squared:.6g},{branch}"
                profiles.append((label, ys, vals))
                rows.extend(
                    (label, float(y), float(v)) for y, v in zip(ys, vals)
                )
    except Slosh2Error as exc:
        _fail(exc)

    out = Path(out_path)
    reporting.write_csv(out, ["mode", "y", "profile"], rows, config)
    reporting.write_json(
        out.with_name(out.stem + "_rayleigh.json"), {"checks": checks}, config
    )
    if plot:
        reporting.render_modes_figure(profiles, out.with_suffix(".png"))
    click.echo(f"{len(checks)} mode profiles written to {out}")


@main.command()
@click.option("--measurement", "measurement_path", required=True, type=click.Path(),
              help="measurement JSON file")
@click.option("--scan-n", type=int, default=inv.SCAN_N, show_default=True)
@click.option("--class-tol", type=float, default=inv.CLASS_TOL, show_default=True)
@_out_opt
@_plot_opt
def inverse(measurement_path, scan_n, class_tol, out_path, plot):
    """Recover the density ratio and interface depth from a measurement."""
    config = {
        "command": "inverse", "measurement": measurement_path,
        "scan_n": scan_n, "class_tol": class_tol,
    }
    tolerances = {
        "class_tol": class_tol,
        "rho_consistency": inv.RHO_CONSISTENCY_TOL,
        "h_rel_tol": inv.H_REL_TOL,
        "coincident_band": inv.COINCIDENT_REL_TOL,
    }
    out = Path(out_path)
    try:
        m = parse_measurement(measurement_path)
    except Slosh2Error as exc:
        _fail(exc)
    candidates = []
    error_doc = None
    result = None
    try:
        result = inv.recover(m, class_tol=class_tol)
    except AmbiguousRootsError as exc:
        candidates = [
            {"h": h, "rho": r, "rho_consistency": c} for h, r, c in exc.candidates
        ]
        error_doc = {"class": type(exc).__name__, "reason": str(exc)}
    except Slosh2Error as exc:
        _write_inverse_output(out, None, [], {"class": type(exc).__name__, "reason": str(exc)},
                              m, config, tolerances, plot)
        _fail(exc)

    _write_inverse_output(out, result, candidates, error_doc, m, config, tolerances, plot)
    if error_doc is not None:
        click.echo(f"candidate roots written to {out}")
        _fail(AmbiguousRootsError(error_doc["reason"], [(c["h"], c["rho"], c["rho_consistency"]) for c in candidates]))
    click.echo(
        f"recovered rho={reporting.format_float(result.rho)} "
        f"h={reporting.format_float(result.h)} branch={result.branch}; written to {out}"
    )


def _write_inverse_output(out, result, candidates, error_doc, m, config, tolerances, plot):
    payload: dict = {
        "measurement": {"nu_1": m.nu_1, "nu_N": m.nu_N,
                        "k1_squared": m.fundamental_level.k_squared,
                        "kN_squared": m.second_level.k_squared,
                        "nu1_w": m.nu1_w, "nuN_w": m.nuN_w},
        "candidates": candidates,
    }
    if result is not None:
        d = result.diagnostics
        payload.update({
            "rho": result.rho, "h": result.h, "branch": result.branch,
            "diagnostics": {
                "nc_first": d.nc_first, "nc_second": d.nc_second, "u_at_0": d.u_at_0,
                "root_count_estimate": d.root_count_estimate,
                "rho_consistency": d.rho_consistency,
                "elevation_residual": d.elevation_residual,
                "prop7_unique_sufficient": d.prop7_unique_sufficient,
                "cross_branch_disagreement": d.cross_branch_disagreement,
            },
        })
    if error_doc is not None:
        payload["error"] = error_doc
    reporting.write_json(out, payload, config, tolerances)
    if plot:
        hs = np.linspace(0.0, m.geometry.depth, 1024)
        us = inv.U_value(hs, m)
        roots = [c["h"] for c in candidates]
        if result is not None and result.branch in ("minus", "coincident"):
            roots.append(result.h)
        reporting.render_inverse_figure(hs, us, roots, out.with_suffix(".png"))


@main.command()
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="optional JSON report of the check results")
def check(out_path):
    """Run the invariant battery; nonzero exit on any failure."""
    results = run_checks()
    for name, ok, detail in results:
        click.echo(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    if out_path is not None:
        reporting.write_json(
            Path(out_path),
            {"checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in results]},
            {"command": "check"},
        )
    failed = [n for n, ok, _ in results if not ok]
    if failed:
        click.echo(f"{len(failed)} checks failed: {', '.join(failed)}", err=True)
        sys.exit(1)
    click.echo(f"all {len(results)} checks passed")


if __name__ == "__main__":
    main()
