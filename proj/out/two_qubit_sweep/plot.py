#!/usr/bin/env python3
"""Heatmaps from results.csv; color runs white (separable) to black (maximally entangled)."""
import csv
from pathlib import Path
import numpy as np
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = Path(__file__).resolve().parent
rows = list(csv.DictReader((HERE / "results.csv").open()))
if not rows:
    print("results.csv carries no data rows; nothing to plot")
    raise SystemExit(0)
x_name, y_name = "F", "omega0"
value_cols = [c for c in rows[0] if c.startswith("ent_")] or ["ent_0"]
xs = sorted({float(r[x_name]) for r in rows})
ys = sorted({float(r[y_name]) for r in rows})
for col in value_cols:
    grid = np.full((len(ys), len(xs)), np.nan)
    dev = np.full((len(ys), len(xs)), np.nan)
    for r in rows:
        i = ys.index(float(r[y_name])); j = xs.index(float(r[x_name]))
        grid[i, j] = float(r[col])
        if "deviation" in r: dev[i, j] = float(r["deviation"])
    fig, ax = plt.subplots(figsize=(5, 4))
    im = ax.imshow(grid, origin="lower", cmap="gray_r", vmin=0.0, vmax=1.0,
                   extent=[xs[0], xs[-1], ys[0], ys[-1]], aspect="auto")
    if np.isfinite(dev).all():
        level = 0.04
        ax.contour(xs, ys, dev, levels=[level], colors="tab:blue", linestyles="dashed", linewidths=0.8)
    ax.set_xlabel(x_name + " / omega")
    ax.set_ylabel(y_name + " / omega")
    ax.set_title(col)
    fig.colorbar(im, ax=ax)
    fig.tight_layout()
    fig.savefig(HERE / (col + ".png"), dpi=160)
    print("wrote", HERE / (col + ".png"))
