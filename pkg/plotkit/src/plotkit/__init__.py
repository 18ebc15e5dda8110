"""plotkit: offline heatmap rendering for sweep CSVs."""

from .render import PlotSpec, SchemaError, SweepGrid, build_figure, read_sweep_csv, render_heatmap

__version__ = "0.1.0"
