#!/usr/bin/env python3
"""Semilog plot of s against L from `qpf sweep --out`, with the fitted lines
from `qpf fit --out` overlaid when given.

    python docs/plot_scaling.py sweep.csv [fits.json] [scaling.png]
"""
import json
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd


def main(sweep, fits=None, out="scaling.png"):
    df = pd.read_csv(sweep, comment="#")
    fig, ax = plt.subplots(figsize=(5, 4))
    for d, group in df.groupby("d_max"):
        group = group.sort_values("L")
        ax.semilogy(group["L"], group["s"], "o", label=f"d_max={d}")
    if fits:
        with open(fits) as f:
            for rec in json.load(f):
                if rec["t"] is None:
                    continue
                lo, hi = rec["window"]
                ls = np.linspace(lo, hi, 50)
                ax.semilogy(ls, rec["c"] * 2.0 ** (-ls / rec["t"]), "-", color="gray", lw=0.8)
    ax.set_xlabel("L")
    ax.set_ylabel("s")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)


if __name__ == "__main__":
    main(*sys.argv[1:4])
