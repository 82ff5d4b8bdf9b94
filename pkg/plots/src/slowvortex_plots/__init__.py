"""Figure rendering for slowvortex CSV/JSON artifacts.

This package never imports the simulation library; it consumes only the
files the ``slowvortex`` CLI writes (CSV tables plus a JSON sidecar) and
verifies their provenance hashes before drawing anything.
"""

from .model import (ArtifactError, FIGURE_KINDS, PlotJob, Table,
                    check_provenance, classify_table, read_sidecar,
                    read_table, regular_grid, require_columns,
                    sidecar_decimation)
from .render import GLYPH_COLORS, Glyph, RenderReport, render

__version__ = "0.1.0"

__all__ = [
    "ArtifactError",
    "FIGURE_KINDS",
    "GLYPH_COLORS",
    "Glyph",
    "PlotJob",
    "RenderReport",
    "Table",
    "check_provenance",
    "classify_table",
    "read_sidecar",
    "read_table",
    "regular_grid",
    "render",
    "require_columns",
    "sidecar_decimation",
]
