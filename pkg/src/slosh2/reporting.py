"""Deterministic result files: CSV sweeps, JSON records, and figures.

Every file starts with a header block recording the tool version, a hash of
the resolved configuration, and the tolerances in force, so identical
configurations produce byte-identical output.  Floats are serialised with 17
significant digits (round-trip exact).
"""

from __future__ import annotations

import hashlib
import io
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

TOOL_VERSION = "0.1.0"


def format_float(x: float) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    return str(x)


def _json_encode(obj, out: list) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            _json_encode(str(key), out)
            out.append(":")
            _json_encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _json_encode(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, fixed separators, 17-digit floats."""
    out: list = []
    _json_encode(obj, out)
    return "".join(out)


def config_hash(config: dict) -> str:
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()[:16]


def header_lines(config: dict, tolerances: dict | None = None) -> list[str]:
    lines = [
        f"tool=slosh2 {TOOL_VERSION}",
        f"config_hash={config_hash(config)}",
    ]
    for key in sorted(tolerances or {}):
        lines.append(f"tolerance.{key}={format_float((tolerances or {})[key])}")
    return lines


def write_csv(path, columns, rows, config: dict, tolerances: dict | None = None) -> None:
    """CSV with a commented header block; newline and float format fixed."""
    buf = io.StringIO()
    for line in header_lines(config, tolerances):
        buf.write(f"# {line}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(format_float(v) if isinstance(v, float) else str(v) for v in row))
        buf.write("\n")
    Path(path).write_text(buf.getvalue(), encoding="utf-8", newline="\n")


def write_json(path, payload: dict, config: dict, tolerances: dict | None = None) -> None:
    doc = {
        "meta": {
            "tool": f"slosh2 {TOOL_VERSION}",
            "config_hash": config_hash(config),
            "tolerances": dict(tolerances or {}),
        },
        "result": payload,
    }
    Path(path).write_text(canonical_json(doc) + "\n", encoding="utf-8", newline="\n")


def _finish(fig, path) -> None:
    fig.savefig(path, dpi=150, metadata={"Software": None})
    plt.close(fig)


def render_spectrum_figure(entries, nu_max: float, weyl_curve, path) -> None:
    """Eigenvalue staircase with the Weyl-law comparison curve."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.4), constrained_layout=True)
    nus = [e.nu for e in entries for _ in range(e.multiplicity)]
    counts = range(1, len(nus) + 1)
    ax1.step(nus, list(counts), where="post", lw=1.0)
    ax1.set_xlabel(r"$\nu$")
    ax1.set_ylabel(r"$\mathcal{N}(\nu)$")
    ax1.set_title("distribution function")
    if weyl_curve:
        xs, ys = zip(*weyl_curve)
        ax2.plot(xs, ys, lw=1.0)
        ax2.axhline(1.0, color="k", ls=":", lw=0.8)
        ax2.set_xlabel(r"$\nu$")
        ax2.set_ylabel("count / Weyl law")
        ax2.set_title("Weyl ratio")
    _finish(fig, path)


def render_forward_figure(rows, path) -> None:
    """Branch eigenvalues against wavenumber with their large-k slopes."""
    fig, ax = plt.subplots(figsize=(5.2, 3.6), constrained_layout=True)
    ks = [r["k"] for r in rows]
    ax.plot(ks, [r["nu_minus"] / r["k"] for r in rows], "o-", ms=3, label=r"$\nu^{(-)}/k$")
    ax.plot(ks, [r["nu_plus"] / r["k"] for r in rows], "s-", ms=3, label=r"$\nu^{(+)}/k$")
    ax.plot(ks, [r["nu_w"] / r["k"] for r in rows], "k:", lw=1.0, label=r"$\nu^{W}/k$")
    if rows:
        ax.axhline(rows[-1]["asym_minus"] / rows[-1]["k"], color="C0", ls="--", lw=0.8)
        ax.axhline(rows[-1]["asym_plus"] / rows[-1]["k"], color="C1", ls="--", lw=0.8)
    ax.set_xscale("log")
    ax.set_xlabel("k")
    ax.legend(frameon=False)
    _finish(fig, path)


def render_modes_figure(profiles, path) -> None:
    """Vertical profiles of the first few modes, both layers."""
    fig, ax = plt.subplots(figsize=(4.6, 3.8), constrained_layout=True)
    for label, ys, vals in profiles:
        ax.plot(vals, ys, lw=1.0, label=label)
    ax.set_xlabel("vertical profile")
    ax.set_ylabel("y")
    ax.legend(frameon=False, fontsize=7)
    _finish(fig, path)


def render_inverse_figure(h_grid, u_vals, roots, path) -> None:
    """The interface-depth mismatch function with located roots."""
    fig, ax = plt.subplots(figsize=(5.0, 3.4), constrained_layout=True)
    ax.plot(h_grid, u_vals, lw=1.0)
    ax.axhline(0.0, color="k", lw=0.6)
    for h in roots:
        ax.axvline(h, color="C3", ls="--", lw=0.8)
    ax.set_xlabel("trial interface depth h")
    ax.set_ylabel("U(h), cosh-scaled")
    _finish(fig, path)
