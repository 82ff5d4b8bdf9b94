"""Plot-job description and artifact loading.

Input is the simulation CLI's file interface: CSV tables plus a JSON
sidecar echoing the generating configuration and its hash.  Every CSV row
carries that hash in a ``config_hash`` column; loading refuses tables whose
provenance does not match the sidecar, so figures cannot silently mix
artifacts from different runs.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

FIGURE_KINDS = ("heatmap", "panel-grid", "ellipse-overlay", "ellipticity-map")

# required columns per table flavor; config_hash is checked separately
_RESPONSE_COLUMNS = ("phi", "delta", "im_chi_r", "re_chi_r", "im_chi_l",
                     "re_chi_l", "valid_r", "valid_l")
_PROPAGATION_COLUMNS = ("x", "y", "intensity_r", "intensity_l",
                        "intensity_total", "im_chi_r", "im_chi_l")
_TEXTURE_COLUMNS = ("x", "y", "s0", "kappa", "xi", "class")
_SWEEP_COLUMNS = ("zeta_z", "delta", "avg_kappa")


class ArtifactError(ValueError):
    """Raised for missing, mismatched, or empty input artifacts."""


@dataclass(frozen=True)
class PlotJob:
    """One figure to render from one artifact bundle."""

    kind: str
    inputs: tuple[Path, ...]
    sidecar: Path
    out: Path
    cmap: str | None = None
    decimation: int | None = None
    column: str | None = None
    dpi: int = 150

    def __post_init__(self):
        if self.kind not in FIGURE_KINDS:
            raise ArtifactError(f"unknown figure kind {self.kind!r}; "
                                f"expected one of {FIGURE_KINDS}")
        if not self.inputs:
            raise ArtifactError("at least one input CSV is required")
        if self.decimation is not None and self.decimation < 1:
            raise ArtifactError("decimation must be a positive integer")


@dataclass(frozen=True)
class Table:
    """A parsed CSV with named float columns plus any string columns."""

    path: Path
    columns: tuple[str, ...]
    floats: dict[str, np.ndarray]
    strings: dict[str, list[str]] = field(default_factory=dict)

    @property
    def n_rows(self) -> int:
        first = next(iter(self.floats.values()), None)
        return 0 if first is None else int(first.size)


def read_sidecar(path: Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            sidecar = json.load(fh)
    except FileNotFoundError:
        raise ArtifactError(f"sidecar {path} does not exist") from None
    except json.JSONDecodeError as exc:
        raise ArtifactError(f"sidecar {path} is not valid JSON: {exc}") from None
    if "config_hash" not in sidecar:
        raise ArtifactError(f"sidecar {path} carries no config_hash")
    return sidecar


def read_table(path: Path, *, string_columns: tuple[str, ...] = ("class",),
               ) -> Table:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise ArtifactError(f"{path} has no header row") from None
            rows = list(reader)
    except FileNotFoundError:
        raise ArtifactError(f"input {path} does not exist") from None
    if not rows:
        raise ArtifactError(f"no data: {path} holds a header but zero rows")

    by_name: dict[str, list[str]] = {name: [] for name in header}
    for row in rows:
        if len(row) != len(header):
            raise ArtifactError(f"{path}: row with {len(row)} cells does not "
                                f"match {len(header)}-column header")
        for name, cell in zip(header, row):
            by_name[name].append(cell)

    floats: dict[str, np.ndarray] = {}
    strings: dict[str, list[str]] = {}
    for name, cells in by_name.items():
        if name in string_columns or name == "config_hash":
            strings[name] = cells
            continue
        try:
            floats[name] = np.array([float(c) for c in cells])
        except ValueError:
            raise ArtifactError(f"{path}: column {name!r} holds "
                                "non-numeric cells") from None
    return Table(path=path, columns=tuple(header), floats=floats,
                 strings=strings)


def check_provenance(table: Table, sidecar: dict) -> None:
    if "config_hash" not in table.columns:
        raise ArtifactError(f"{table.path} has no config_hash column; "
                            "provenance cannot be verified")
    expected = sidecar["config_hash"]
    seen = set(table.strings["config_hash"])
    if seen != {expected}:
        raise ArtifactError(
            f"provenance mismatch: {table.path} carries hash(es) "
            f"{sorted(seen)} but the sidecar says {expected!r}; refusing "
            "to mix artifacts from different runs")


def require_columns(table: Table, required: tuple[str, ...]) -> None:
    missing = [c for c in required if c not in table.columns]
    if missing:
        raise ArtifactError(f"{table.path} is missing column(s) {missing}; "
                            f"found {list(table.columns)}")


def classify_table(table: Table) -> str:
    """Name the artifact flavor by its column signature."""
    for flavor, cols in (("response", _RESPONSE_COLUMNS),
                         ("propagation", _PROPAGATION_COLUMNS),
                         ("texture", _TEXTURE_COLUMNS),
                         ("sweep", _SWEEP_COLUMNS)):
        if all(c in table.columns for c in cols):
            return flavor
    raise ArtifactError(f"{table.path} matches no known artifact layout: "
                        f"columns {list(table.columns)}")


def regular_grid(outer: np.ndarray, inner: np.ndarray, values: np.ndarray,
                 ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reshape an outer-major flattened table onto its rectangular grid."""
    outer_axis = np.unique(outer)
    inner_axis = np.unique(inner)
    if outer_axis.size * inner_axis.size != values.size:
        raise ArtifactError(
            f"rows do not form a rectangular grid: {outer_axis.size} x "
            f"{inner_axis.size} != {values.size}")
    return outer_axis, inner_axis, values.reshape(outer_axis.size,
                                                  inner_axis.size)


def sidecar_decimation(sidecar: dict, fallback: int = 6) -> int:
    config = sidecar.get("config", {})
    value = config.get("output", {}).get("decimation", fallback)
    return int(value) if int(value) >= 1 else fallback
