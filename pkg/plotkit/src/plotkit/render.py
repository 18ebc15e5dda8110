"""Heatmap rendering for sweep CSVs.

Consumes the sweep CSV schema
``theta,tau,dH,overlap_angle,E_G,G_E,lhs,delta`` (row-major, theta outer)
and renders one delta heatmap panel per input file: evolution time
J tau / hbar on the horizontal axis, initial-state angle theta (radians)
on the vertical axis, slack delta as color.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # offline batch renderer

import matplotlib.pyplot as plt
import numpy as np

REQUIRED_COLUMNS = ("theta", "tau", "dH", "overlap_angle", "E_G", "G_E", "lhs", "delta")

__all__ = ["PlotSpec", "SweepGrid", "read_sweep_csv", "build_figure", "render_heatmap"]


class SchemaError(ValueError):
    """The CSV does not carry the sweep schema."""


@dataclass(frozen=True)
class SweepGrid:
    """One sweep surface: rectangular delta values over (theta, tau)."""

    thetas: np.ndarray
    taus: np.ndarray
    delta: np.ndarray  # shape (len(thetas), len(taus))


@dataclass(frozen=True)
class PlotSpec:
    """What to render: one panel per input CSV, laid out rows x cols."""

    inputs: tuple[str, ...]
    layout: tuple[int, int] = (1, 1)
    titles: tuple[str, ...] | None = None
    xlabel: str = r"$J\tau/\hbar$"
    ylabel: str = r"$\theta$ (rad)"
    vmin: float = 0.0
    vmax: float | None = None
    cmap: str = "viridis"
    dpi: int = 150
    out: str = "delta.png"

    def __post_init__(self) -> None:
        rows, cols = self.layout
        if rows < 1 or cols < 1:
            raise ValueError("layout must have positive dimensions")
        if rows * cols != len(self.inputs):
            raise ValueError(
                f"layout {rows}x{cols} has {rows * cols} panels "
                f"but {len(self.inputs)} input file(s) were given"
            )
        if self.titles is not None and len(self.titles) != len(self.inputs):
            raise ValueError("need one title per input file")


def read_sweep_csv(path: str | Path) -> SweepGrid:
    """Parse one sweep CSV into a rectangular delta grid.

    Raises SchemaError naming the missing column on schema mismatch, and
    ValueError for an empty (header-only) grid.
    """
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in REQUIRED_COLUMNS:
            if col not in header:
                raise SchemaError(f"{path}: missing required column {col!r}")
        rows = [(float(r["theta"]), float(r["tau"]), float(r["delta"])) for r in reader]
    if not rows:
        raise ValueError(f"{path}: empty grid (header only)")
    thetas = np.unique([r[0] for r in rows])
    taus = np.unique([r[1] for r in rows])
    if len(rows) != len(thetas) * len(taus):
        raise ValueError(
            f"{path}: {len(rows)} rows do not tile a "
            f"{len(thetas)}x{len(taus)} (theta, tau) grid"
        )
    delta = np.full((len(thetas), len(taus)), np.nan)
    ti = {v: i for i, v in enumerate(thetas)}
    tj = {v: j for j, v in enumerate(taus)}
    for theta, tau, d in rows:
        delta[ti[theta], tj[tau]] = d
    return SweepGrid(thetas, taus, delta)


def build_figure(spec: PlotSpec) -> plt.Figure:
    """Assemble the panel grid; negative-delta cells get a visible marker."""
    grids = [read_sweep_csv(p) for p in spec.inputs]
    rows, cols = spec.layout
    fig, axes = plt.subplots(
        rows, cols, figsize=(3.4 * cols, 2.8 * rows), squeeze=False,
        constrained_layout=True,
    )
    titles = spec.titles or tuple(Path(p).stem for p in spec.inputs)
    vmax = spec.vmax
    if vmax is None:
        vmax = max(float(g.delta.max()) for g in grids) or 1.0
    mesh = None
    for k, (grid, title) in enumerate(zip(grids, titles)):
        ax = axes[k // cols][k % cols]
        mesh = ax.pcolormesh(
            grid.taus, grid.thetas, grid.delta,
            cmap=spec.cmap, vmin=spec.vmin, vmax=vmax, shading="nearest",
        )
        neg_i, neg_j = np.where(grid.delta < -1e-9)
        if neg_i.size:
            warnings.warn(
                f"{spec.inputs[k]}: {neg_i.size} cell(s) with delta < -1e-9",
                stacklevel=2,
            )
            ax.scatter(
                grid.taus[neg_j], grid.thetas[neg_i],
                marker="x", s=30, c="red", linewidths=1.5, zorder=3,
            )
        ax.set_title(title, fontsize=9)
        ax.set_xlabel(spec.xlabel)
        ax.set_ylabel(spec.ylabel)
    fig.colorbar(mesh, ax=[a for row in axes for a in row], label=r"$\delta$", shrink=0.85)
    return fig


def render_heatmap(spec: PlotSpec) -> Path:
    """Render the panels to ``spec.out``; no file is written on error."""
    fig = build_figure(spec)
    out = Path(spec.out)
    try:
        fig.savefig(out, dpi=spec.dpi, metadata=_stable_metadata(out.suffix))
    finally:
        plt.close(fig)
    return out


def _stable_metadata(suffix: str) -> dict | None:
    # strip creator/date stamps so identical inputs give identical bytes
    if suffix.lower() == ".png":
        return {"Software": "plotkit"}
    if suffix.lower() in (".svg", ".pdf"):
        return {"Creator": "plotkit", "Date": None}
    return None
