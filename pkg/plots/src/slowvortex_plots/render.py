"""Figure rendering for the four supported kinds.

Colormap defaults (the source material fixes only the glyph convention, not
the maps): sequential ``viridis`` for intensity/heatmap panels, diverging
``RdBu`` for signed susceptibility panels and for the ellipticity map, the
latter centered so kappa = 0 renders white, left-handed (kappa < 0) red and
right-handed blue.  Ellipse glyphs are colored by the CSV ``class`` column:
linear gold, left-circular red, right-circular blue, elliptical green;
undefined points draw no glyph.  Glyph geometry: fixed semi-major axis,
axial ratio tan|kappa| (0 = line, 1 = circle), rotation xi; circular
classes draw as circles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402
from matplotlib.patches import Ellipse  # noqa: E402

from .model import (ArtifactError, PlotJob, Table, check_provenance,
                    classify_table, read_sidecar, read_table, regular_grid,
                    require_columns, sidecar_decimation)

GLYPH_COLORS = {
    "linear": "gold",
    "left-circular": "red",
    "right-circular": "blue",
    "elliptical": "forestgreen",
}

_KAPPA_LIMIT = np.pi / 4


@dataclass(frozen=True)
class Glyph:
    x: float
    y: float
    klass: str
    color: str


@dataclass(frozen=True)
class RenderReport:
    """What a render call produced, for inspection and testing."""

    out: Path
    kind: str
    n_panels: int
    n_points: int
    glyphs: tuple[Glyph, ...] = field(default_factory=tuple)


def _load_checked(job: PlotJob) -> tuple[dict, list[Table]]:
    sidecar = read_sidecar(job.sidecar)
    tables = []
    for path in job.inputs:
        table = read_table(path)
        check_provenance(table, sidecar)
        tables.append(table)
    return sidecar, tables


def _save(fig, job: PlotJob) -> None:
    job.out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(job.out, dpi=job.dpi, format="png")
    plt.close(fig)


# ==== heatmap ===============================================================


def _render_heatmap(job: PlotJob, tables: list[Table], sidecar: dict,
                    ) -> RenderReport:
    if len(tables) != 1:
        raise ArtifactError("heatmap renders exactly one CSV")
    table = tables[0]
    flavor = classify_table(table)
    if flavor == "propagation":
        outer_name, inner_name = "x", "y"
        default_column = "intensity_total"
        labels = ("x/w", "y/w")
    elif flavor == "response":
        outer_name, inner_name = "phi", "delta"
        default_column = "im_chi_r"
        labels = ("phi", "Delta/Gamma")
    elif flavor == "texture":
        outer_name, inner_name = "x", "y"
        default_column = "s0"
        labels = ("x/w", "y/w")
    else:
        raise ArtifactError("heatmap does not apply to sweep tables; "
                            "use ellipticity-map")
    column = job.column or default_column
    require_columns(table, (outer_name, inner_name, column))
    outer, inner, values = regular_grid(table.floats[outer_name],
                                        table.floats[inner_name],
                                        table.floats[column])
    fig, ax = plt.subplots(figsize=(5.2, 4.2), constrained_layout=True)
    signed = bool(np.any(values < 0.0))
    cmap = job.cmap or ("RdBu" if signed else "viridis")
    if signed:
        vmax = float(np.max(np.abs(values))) or 1.0
        mesh = ax.pcolormesh(inner, outer, values, cmap=cmap,
                             vmin=-vmax, vmax=vmax, shading="nearest")
    else:
        mesh = ax.pcolormesh(inner, outer, values, cmap=cmap,
                             shading="nearest")
    fig.colorbar(mesh, ax=ax, label=column)
    ax.set_xlabel(labels[1])
    ax.set_ylabel(labels[0])
    ax.set_title(column)
    _save(fig, job)
    return RenderReport(out=job.out, kind=job.kind, n_panels=1,
                        n_points=table.n_rows)


# ==== panel grid ============================================================

_RESPONSE_PANELS = (("im_chi_r", "Im"), ("re_chi_r", "Re"),
                    ("abs_chi_r", "|.|"),
                    ("im_chi_l", "Im"), ("re_chi_l", "Re"),
                    ("abs_chi_l", "|.|"))


def _response_panel_values(table: Table, name: str) -> np.ndarray:
    if name.startswith("abs_"):
        side = name[-1]
        return np.hypot(table.floats[f"im_chi_{side}"],
                        table.floats[f"re_chi_{side}"])
    return table.floats[name]


def _render_panel_grid(job: PlotJob, tables: list[Table], sidecar: dict,
                       ) -> RenderReport:
    flavors = {classify_table(t) for t in tables}
    if flavors == {"response"}:
        if len(tables) != 1:
            raise ArtifactError("a response panel grid takes one CSV")
        table = tables[0]
        fig, axes = plt.subplots(2, 3, figsize=(12.0, 6.4),
                                 constrained_layout=True)
        for ax, (name, tag) in zip(axes.ravel(), _RESPONSE_PANELS):
            values = _response_panel_values(table, name)
            phi, delta, grid = regular_grid(table.floats["phi"],
                                            table.floats["delta"], values)
            signed = bool(np.any(grid < 0.0))
            cmap = job.cmap or ("RdBu" if signed else "viridis")
            if signed:
                vmax = float(np.max(np.abs(grid))) or 1.0
                mesh = ax.pcolormesh(delta, phi, grid, cmap=cmap,
                                     vmin=-vmax, vmax=vmax, shading="nearest")
            else:
                mesh = ax.pcolormesh(delta, phi, grid, cmap=cmap,
                                     shading="nearest")
            fig.colorbar(mesh, ax=ax)
            ax.set_title(f"{tag} {name[-len('chi_r'):]}")
            ax.set_xlabel("Delta/Gamma")
            ax.set_ylabel("phi")
        _save(fig, job)
        return RenderReport(out=job.out, kind=job.kind, n_panels=6,
                            n_points=table.n_rows)

    if flavors == {"propagation"}:
        n = len(tables)
        fig, axes = plt.subplots(1, n, figsize=(3.6 * n, 3.4),
                                 constrained_layout=True, squeeze=False)
        column = job.column or "intensity_total"
        total_points = 0
        files = sidecar.get("files", {})
        for ax, table in zip(axes.ravel(), tables):
            require_columns(table, ("x", "y", column))
            x, y, grid = regular_grid(table.floats["x"], table.floats["y"],
                                      table.floats[column])
            mesh = ax.pcolormesh(x, y, grid.T, cmap=job.cmap or "viridis",
                                 shading="nearest")
            fig.colorbar(mesh, ax=ax)
            depth = files.get(table.path.name, {}).get("zeta_z")
            ax.set_title(f"zeta z = {depth:g}" if depth is not None
                         else table.path.stem)
            ax.set_xlabel("x/w")
            ax.set_ylabel("y/w")
            ax.set_aspect("equal")
            total_points += table.n_rows
        _save(fig, job)
        return RenderReport(out=job.out, kind=job.kind, n_panels=n,
                            n_points=total_points)

    raise ArtifactError("panel-grid needs either one response CSV or a "
                        f"series of propagation CSVs, got {sorted(flavors)}")


# ==== ellipse overlay =======================================================


def _render_ellipse_overlay(job: PlotJob, tables: list[Table], sidecar: dict,
                            ) -> RenderReport:
    if len(tables) != 1:
        raise ArtifactError("ellipse-overlay renders exactly one texture CSV")
    table = tables[0]
    if classify_table(table) != "texture":
        raise ArtifactError(f"{table.path} is not a polarization texture "
                            "table")
    x, y, s0 = regular_grid(table.floats["x"], table.floats["y"],
                            table.floats["s0"])
    fig, ax = plt.subplots(figsize=(5.6, 5.0), constrained_layout=True)
    mesh = ax.pcolormesh(x, y, s0.T, cmap=job.cmap or "viridis",
                         shading="nearest")
    fig.colorbar(mesh, ax=ax, label="s0")

    step = job.decimation or sidecar_decimation(sidecar)
    xs, ys = table.floats["x"], table.floats["y"]
    kappas, xis = table.floats["kappa"], table.floats["xi"]
    classes = table.strings["class"]
    # fixed glyph size in data units, from the decimated spacing
    major = 0.42 * step * min(float(np.min(np.diff(x))) if x.size > 1 else 1.0,
                              float(np.min(np.diff(y))) if y.size > 1 else 1.0)
    glyphs: list[Glyph] = []
    n_x, n_y = x.size, y.size
    for i in range(0, n_x, step):
        for j in range(0, n_y, step):
            idx = i * n_y + j
            klass = classes[idx]
            if klass == "undefined":
                continue
            color = GLYPH_COLORS[klass]
            if klass in ("left-circular", "right-circular"):
                width = height = major
                angle = 0.0
            else:
                ratio = float(np.tan(min(abs(kappas[idx]), _KAPPA_LIMIT)))
                width, height = major, max(major * ratio, 0.06 * major)
                angle = float(np.degrees(xis[idx]))
            ax.add_patch(Ellipse((xs[idx], ys[idx]), width, height,
                                 angle=angle, fill=False, color=color,
                                 linewidth=1.1))
            glyphs.append(Glyph(float(xs[idx]), float(ys[idx]), klass, color))
    ax.set_xlabel("x/w")
    ax.set_ylabel("y/w")
    ax.set_aspect("equal")
    _save(fig, job)
    return RenderReport(out=job.out, kind=job.kind, n_panels=1,
                        n_points=table.n_rows, glyphs=tuple(glyphs))


# ==== ellipticity map =======================================================


def _render_ellipticity_map(job: PlotJob, tables: list[Table], sidecar: dict,
                            ) -> RenderReport:
    if len(tables) != 1:
        raise ArtifactError("ellipticity-map renders exactly one sweep CSV")
    table = tables[0]
    if classify_table(table) != "sweep":
        raise ArtifactError(f"{table.path} is not an ellipticity sweep table")
    z, delta, kappa = regular_grid(table.floats["zeta_z"],
                                   table.floats["delta"],
                                   table.floats["avg_kappa"])
    fig, ax = plt.subplots(figsize=(5.6, 4.4), constrained_layout=True)
    # diverging, centered: kappa = 0 white, left-handed red, right-handed blue
    mesh = ax.pcolormesh(delta, z, kappa, cmap=job.cmap or "RdBu",
                         vmin=-_KAPPA_LIMIT, vmax=_KAPPA_LIMIT,
                         shading="nearest")
    fig.colorbar(mesh, ax=ax, label="average kappa")
    ax.set_xlabel("Delta/Gamma")
    ax.set_ylabel("zeta z")
    _save(fig, job)
    return RenderReport(out=job.out, kind=job.kind, n_panels=1,
                        n_points=table.n_rows)


_RENDERERS = {
    "heatmap": _render_heatmap,
    "panel-grid": _render_panel_grid,
    "ellipse-overlay": _render_ellipse_overlay,
    "ellipticity-map": _render_ellipticity_map,
}


def render(job: PlotJob) -> RenderReport:
    """Render one job to PNG; inputs are opened read-only and unmodified."""
    sidecar, tables = _load_checked(job)
    return _RENDERERS[job.kind](job, tables, sidecar)
