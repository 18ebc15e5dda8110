"""Batch figure generation from sweep CSVs.

    plot --inputs fig1.csv --layout 1x1 --out fig1.png
    plot --inputs a1.csv,a2.csv,a3.csv,b1.csv,b2.csv,b3.csv --layout 2x3 \
         --titles "h=0; g=0, m=.5|..." --out fig2.png
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .render import PlotSpec, render_heatmap


def _layout(text: str) -> tuple[int, int]:
    try:
        rows, cols = text.lower().split("x")
        return int(rows), int(cols)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"layout must look like '2x3', got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render delta heatmaps (time horizontal, theta vertical) from sweep CSVs.",
    )
    parser.add_argument(
        "--inputs", required=True,
        help="comma-separated sweep CSV paths, one panel each (row-major)",
    )
    parser.add_argument("--layout", type=_layout, default=(1, 1), help="panel grid, e.g. 2x3")
    parser.add_argument("--out", required=True, help="output image path (.png, .svg, .pdf)")
    parser.add_argument("--titles", default=None, help="panel titles, separated by '|'")
    parser.add_argument("--cmap", default="viridis", help="matplotlib colormap (default viridis)")
    parser.add_argument("--vmax", type=float, default=None, help="color scale maximum")
    parser.add_argument("--dpi", type=int, default=150, help="raster resolution (default 150)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        spec = PlotSpec(
            inputs=tuple(p.strip() for p in ns.inputs.split(",") if p.strip()),
            layout=ns.layout,
            titles=tuple(t.strip() for t in ns.titles.split("|")) if ns.titles else None,
            cmap=ns.cmap,
            vmax=ns.vmax,
            dpi=ns.dpi,
            out=ns.out,
        )
        out = render_heatmap(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
