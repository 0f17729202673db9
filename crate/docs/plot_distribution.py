#!/usr/bin/env python3
"""Bar plot of an outcome distribution written by `qpf dist --out FILE.csv`.

    python docs/plot_distribution.py fig.csv [fig.png]
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main(path, out=None):
    with open(path) as f:
        meta = f.readline().lstrip("# ").strip()
    df = pd.read_csv(path, comment="#")
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.bar(df["j"], df["probability"], width=1.0)
    ax.set_xlabel("j")
    ax.set_ylabel("Pr(j)")
    ax.set_xlim(-0.5, len(df) - 0.5)
    ax.set_title(meta, fontsize=8)
    fig.tight_layout()
    fig.savefig(out or path.rsplit(".", 1)[0] + ".png", dpi=150)


if __name__ == "__main__":
    main(*sys.argv[1:3])
