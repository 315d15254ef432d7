"""Weight diagram of a build: one marker per basis vector at its weight.

Weights are drawn in the plane with the g2 root system at its true angles;
markers are coloured by the sl3 eigenvalue block of the GT vector.
"""
import math

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

STYLE = {
    "font.family": "serif",
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.linewidth": 0.6,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "legend.fontsize": 7,
    "figure.dpi": 150,
    "svg.hashsalt": "g2gt",
}


def plane(a, b):
    """Dynkin labels to the plane: omega1 short, omega2 long, 30 degrees apart."""
    w1 = (1.0, 0.0)
    w2 = (math.sqrt(3) * math.cos(math.pi / 6), math.sqrt(3) * math.sin(math.pi / 6))
    return (a * w1[0] + b * w2[0], a * w1[1] + b * w2[1])


def weight_diagram(weights, groups, title, path):
    """weights: list of Dynkin pairs; groups: parallel list of block labels."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(3.4, 3.4))
        labels = sorted(set(groups), key=str)
        cmap = plt.get_cmap("tab10")
        counts = {}
        for w, g in zip(weights, groups):
            counts[(w, g)] = counts.get((w, g), 0) + 1
        seen = {}
        for (w, g), n in sorted(counts.items(), key=str):
            x, y = plane(*w)
            k = seen.get(w, 0)
            seen[w] = k + n
            ax.scatter([x], [y], s=28 + 22 * k, facecolors="none",
                       edgecolors=[cmap(labels.index(g) % 10)], linewidths=0.9)
        handles = [plt.Line2D([], [], marker="o", ls="", mfc="none",
                              mec=cmap(n % 10), label=str(g)) for n, g in enumerate(labels)]
        ax.legend(handles=handles, title="sl3 block", loc="upper right", frameon=False)
        ax.axhline(0, color="0.8", lw=0.4, zorder=0)
        ax.axvline(0, color="0.8", lw=0.4, zorder=0)
        ax.set_aspect("equal")
        ax.set_title(title)
        ax.set_xlabel("weight, first coordinate")
        ax.set_ylabel("weight, second coordinate")
        fig.tight_layout()
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
    return path
