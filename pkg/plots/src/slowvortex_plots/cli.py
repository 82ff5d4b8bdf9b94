"""Command line entry point: ``slowvortex-plot <figure-kind> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .model import FIGURE_KINDS, ArtifactError, PlotJob
from .render import render


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slowvortex-plot",
        description="Render figures from slowvortex CSV/JSON artifacts.",
    )
    parser.add_argument("kind", choices=FIGURE_KINDS,
                        help="figure kind to render")
    parser.add_argument("--in", dest="inputs", type=Path, action="append",
                        required=True, metavar="CSV",
                        help="input CSV table (repeat for multi-panel kinds)")
    parser.add_argument("--sidecar", type=Path, required=True, metavar="JSON",
                        help="JSON sidecar the CSVs must match")
    parser.add_argument("--out", type=Path, required=True, metavar="PNG",
                        help="output image path")
    parser.add_argument("--cmap", default=None,
                        help="matplotlib colormap override")
    parser.add_argument("--decimation", type=int, default=None,
                        help="glyph grid stride for ellipse overlays")
    parser.add_argument("--column", default=None,
                        help="value column to map (heatmap/panel kinds)")
    parser.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        job = PlotJob(kind=args.kind, inputs=tuple(args.inputs),
                      sidecar=args.sidecar, out=args.out, cmap=args.cmap,
                      decimation=args.decimation, column=args.column,
                      dpi=args.dpi)
        report = render(job)
    except (ArtifactError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
