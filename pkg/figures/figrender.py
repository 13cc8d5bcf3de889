"""Render publication-style figures from the optimizer-benchmark CSVs.

Consumes only the CSV files the benchmark CLI writes; knows nothing about
the library that produced them.  Figure ids and their input schemas:

    fig1a..fig1d  region CSV        mu,alpha,shaded
    fig2a         quadbench CSV     t,method,logJ
    fig2b         quadbench CSV     t,method,theta0,theta1
    fig3          autoencoder CSV   epoch,method,train_bce

Region panels shade cells with shaded=1 over mu (x) and alpha (y); curve
figures draw one legend-labelled series per method.  Rendering is
deterministic: identical inputs produce identical pixel data.
"""

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap

__all__ = ["FigureSpec", "SchemaError", "render", "main",
           "UNSHADED_RGB", "SHADED_RGB"]

# Exact cell palette for the region panels; tests count these pixels.
UNSHADED_RGB = (235, 235, 235)
SHADED_RGB = (31, 119, 180)

REGION_FIGURES = {
    "fig1a": "region where the update-descent rule converges",
    "fig1b": "region where update descent beats the accelerated gradient",
    "fig1c": "region where classical momentum beats the accelerated gradient",
    "fig1d": "region where classical momentum beats update descent",
}

SCHEMAS = {
    "fig2a": ("t", "method", "logJ"),
    "fig2b": ("t", "method", "theta0", "theta1"),
    "fig3": ("epoch", "method", "train_bce"),
}
SCHEMAS.update({fig: ("mu", "alpha", "shaded") for fig in REGION_FIGURES})

METHOD_STYLE = {
    "gd": dict(color="#7f7f7f", linestyle=":"),
    "mom": dict(color="#2ca02c", linestyle="-."),
    "nag": dict(color="#ff7f0e", linestyle="--"),
    "nag-original": dict(color="#d62728", linestyle="--"),
    "nag-two-stage": dict(color="#9467bd", linestyle="--"),
    "rud": dict(color="#1f77b4", linestyle="-"),
}


class SchemaError(ValueError):
    """Input CSV does not match the schema the figure id expects."""


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    csv_path: str
    out_path: str

    def __post_init__(self):
        if self.figure_id not in SCHEMAS:
            raise ValueError(
                f"unknown figure id {self.figure_id!r}; "
                f"expected one of {', '.join(sorted(SCHEMAS))}"
            )


def read_rows(csv_path, required):
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [col for col in required if col not in header]
        if missing:
            raise SchemaError(
                f"{csv_path}: missing column(s) {', '.join(missing)} "
                f"(header was {','.join(header) if header else 'empty'})"
            )
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{csv_path}: no data rows")
    return rows


def _region_grid(rows):
    mus = np.array([float(r["mu"]) for r in rows])
    alphas = np.array([float(r["alpha"]) for r in rows])
    shaded = np.array([int(r["shaded"]) for r in rows])
    mu_axis = np.unique(mus)
    alpha_axis = np.unique(alphas)
    grid = np.zeros((len(alpha_axis), len(mu_axis)))
    i = np.searchsorted(alpha_axis, alphas)
    j = np.searchsorted(mu_axis, mus)
    grid[i, j] = shaded
    return mu_axis, alpha_axis, grid


def _render_region(spec, rows, ax):
    mu_axis, alpha_axis, grid = _region_grid(rows)
    ax.imshow(
        grid,
        origin="lower",
        extent=(mu_axis[0], mu_axis[-1], alpha_axis[0], alpha_axis[-1]),
        aspect="auto",
        interpolation="nearest",
        cmap=ListedColormap([np.array(UNSHADED_RGB) / 255.0,
                             np.array(SHADED_RGB) / 255.0]),
        vmin=0.0,
        vmax=1.0,
    )
    ax.set_xlabel("momentum")
    ax.set_ylabel("learning rate")
    ax.set_title(REGION_FIGURES[spec.figure_id])


def _series_by_method(rows, x_col, y_cols):
    series = {}
    for row in rows:
        bucket = series.setdefault(row["method"], ([], *[[] for _ in y_cols]))
        bucket[0].append(float(row[x_col]))
        for k, col in enumerate(y_cols, start=1):
            bucket[k].append(float(row[col]))
    return series


def _render_curves(rows, ax, x_col, y_col, xlabel, ylabel, title):
    for method, (xs, ys) in sorted(_series_by_method(rows, x_col, [y_col]).items()):
        ax.plot(xs, ys, label=method, **METHOD_STYLE.get(method, {}))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend()


def _render_trajectories(rows, ax):
    for method, (_, xs, ys) in sorted(
            _series_by_method(rows, "t", ["theta0", "theta1"]).items()):
        ax.plot(xs, ys, label=method, linewidth=1.0,
                **METHOD_STYLE.get(method, {}))
        ax.plot(xs[0], ys[0], marker="o", color="black", markersize=3)
    ax.set_xlabel("first component")
    ax.set_ylabel("second component")
    ax.set_title("iterate trajectories, first two components")
    ax.legend()


def render(spec: FigureSpec) -> None:
    """Render one figure to a raster image file."""
    rows = read_rows(spec.csv_path, SCHEMAS[spec.figure_id])
    fig, ax = plt.subplots(figsize=(6.0, 4.5), dpi=150)
    try:
        if spec.figure_id in REGION_FIGURES:
            _render_region(spec, rows, ax)
        elif spec.figure_id == "fig2a":
            _render_curves(rows, ax, "t", "logJ", "iteration",
                           "log shifted objective", "quadratic benchmark")
        elif spec.figure_id == "fig2b":
            _render_trajectories(rows, ax)
        else:
            _render_curves(rows, ax, "epoch", "train_bce", "epoch",
                           "mean training BCE", "autoencoder benchmark")
        fig.savefig(spec.out_path, metadata={"Software": "rud-figures"})
    finally:
        plt.close(fig)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render", description="Render benchmark CSVs to figures.")
    parser.add_argument("--figure", required=True, choices=sorted(SCHEMAS))
    parser.add_argument("--in", dest="csv_path", required=True)
    parser.add_argument("--out", dest="out_path", required=True)
    args = parser.parse_args(argv)
    spec = FigureSpec(args.figure, args.csv_path, args.out_path)
    try:
        render(spec)
    except (SchemaError, FileNotFoundError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(f"wrote {args.out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
