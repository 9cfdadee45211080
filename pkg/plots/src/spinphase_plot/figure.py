"""CSV parsing and panel rendering.

The plotter consumes only the simulator's public CSV contract and never
recomputes any physics: each panel shows the entropy production rate of
every curve in one CSV, with standard errors as shaded bands. A CSV that
holds a single curve with finite von Neumann rates (the Wehrl-versus-von-
Neumann study) is drawn as a two-curve overlay instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import EmptyInput, SchemaMismatch

EXPECTED_HEADER = (
    "curve_id,t,pi,pi_stderr,phi,phi_stderr,wehrl,wehrl_stderr,pi_vn,c_l1,c_rel"
)
_COLUMNS = EXPECTED_HEADER.split(",")


@dataclass(frozen=True)
class CurveData:
    curve_id: str
    t: np.ndarray
    pi: np.ndarray
    pi_stderr: np.ndarray
    pi_vn: np.ndarray
    c_l1: float

    @property
    def label(self) -> str:
        return f"{self.curve_id} (C={self.c_l1:.3g})"


@dataclass(frozen=True)
class FigureSpec:
    """One output image: a grid of panels, one CSV per panel."""

    csv_paths: tuple[str, ...]
    layout: tuple[int, int]  # rows, cols
    out: str
    title: str | None = None
    dpi: int = 150

    def __post_init__(self):
        rows, cols = self.layout
        if rows < 1 or cols < 1:
            raise ValueError(f"layout must be positive, got {self.layout}")
        if not self.csv_paths:
            raise EmptyInput("no CSV paths given")
        if len(self.csv_paths) > rows * cols:
            raise ValueError(
                f"{len(self.csv_paths)} CSVs do not fit a {rows}x{cols} grid"
            )


def parse_csv(path: str) -> list[CurveData]:
    """Read one simulator CSV into per-curve arrays, sorted by coherence."""
    header = None
    rows = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line
                if header != EXPECTED_HEADER:
                    raise SchemaMismatch(
                        f"{path}: header {header!r} does not match the CSV contract"
                    )
                continue
            cells = line.split(",")
            if len(cells) != len(_COLUMNS):
                raise SchemaMismatch(f"{path}: row has {len(cells)} columns")
            rows.append(cells)
    if header is None or not rows:
        raise EmptyInput(f"{path}: no data rows")

    by_curve: dict[str, list[list[str]]] = {}
    for cells in rows:
        by_curve.setdefault(cells[0], []).append(cells)

    curves = []
    for curve_id, group in by_curve.items():
        cols = np.array([[float(c) for c in cells[1:]] for cells in group])
        curves.append(
            CurveData(
                curve_id=curve_id,
                t=cols[:, 0],
                pi=cols[:, 1],
                pi_stderr=cols[:, 2],
                pi_vn=cols[:, 7],
                c_l1=float(cols[0, 8]),
            )
        )
    curves.sort(key=lambda c: c.c_l1)
    return curves


def _draw_panel(ax, curves: list[CurveData], name: str) -> None:
    # dephasing runs carry nan von Neumann rates; use that to label the axis
    has_vn = all(np.isfinite(c.pi_vn).all() for c in curves)
    overlay_vn = has_vn and len(curves) == 1
    for curve in curves:
        (line,) = ax.plot(curve.t, curve.pi, label=f"Wehrl {curve.label}"
                          if overlay_vn else curve.label)
        if np.any(curve.pi_stderr > 0):
            ax.fill_between(
                curve.t,
                curve.pi - curve.pi_stderr,
                curve.pi + curve.pi_stderr,
                color=line.get_color(),
                alpha=0.25,
                linewidth=0,
            )
        if overlay_vn:
            ax.plot(curve.t, curve.pi_vn, "--", label=f"von Neumann {curve.label}")
    ax.set_xlabel(r"$\bar{\Gamma}t$" if has_vn else r"$\lambda t$")
    ax.set_ylabel(r"$\Pi$")
    ax.set_title(name)
    ax.legend(fontsize="small")


def render(spec: FigureSpec) -> str:
    """Render the figure described by spec; returns the output path."""
    panels = [(path, parse_csv(path)) for path in spec.csv_paths]
    rows, cols = spec.layout
    fig, axes = plt.subplots(
        rows, cols, figsize=(4.5 * cols, 3.4 * rows), squeeze=False
    )
    flat = axes.ravel()
    for ax, (path, curves) in zip(flat, panels):
        name = path.rsplit("/", 1)[-1].removesuffix(".csv")
        _draw_panel(ax, curves, name)
    for ax in flat[len(panels):]:
        ax.set_axis_off()
    if spec.title:
        fig.suptitle(spec.title)
    fig.tight_layout()
    fig.savefig(spec.out, dpi=spec.dpi)
    plt.close(fig)
    return spec.out
