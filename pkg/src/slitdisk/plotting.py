"""Figures for verification reports (matplotlib, Agg backend).

Each figure reads one profile table of a :class:`VerificationReport`;
profiles that are missing are skipped. PNG metadata is pinned so repeated
runs give identical files.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .counterexample import VerificationReport  # noqa: E402

STYLE = {
    "figure.figsize": (5.5, 3.8),
    "figure.dpi": 100,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.markersize": 4,
}

_PNG_META = {"Software": None}


def _column(table, name):
    header, rows = table
    i = header.index(name)
    return np.array([r[i] for r in rows], dtype=float)


def plot_thin_deltas(table, ax):
    k = _column(table, "k")
    ax.plot(k, _column(table, "thin_delta"), "o-", label="thin_delta(k)")
    ax.plot(k, _column(table, "lower_bound"), "s--", label="two-part lower bound")
    ax.axhline(1.0, color="0.5", lw=0.8)
    ax.set_xlabel("k")
    ax.set_ylabel("product of distances")
    ax.set_title("Thinness of the factorial zeros")
    ax.legend(loc="lower right")


def plot_paths(table, fig):
    path = _column(table, "path")
    k = _column(table, "k")
    ax1, ax2 = fig.subplots(1, 2)
    for j, label in ((1, "towards 1"), (2, "towards -1")):
        sel = path == j
        ax1.plot(k[sel], _column(table, "abs_phi")[sel], "o-", label=label)
    ax1.axhline(0.01, color="0.4", ls="--", lw=0.8, label="floor 0.01")
    ax1.set_ylim(0, 1)
    ax1.set_xlabel("k")
    ax1.set_title("|phi| on the two paths")
    ax1.legend(loc="upper left")
    sel = path == 1
    ax2.semilogy(k[sel], -_column(table, "log10_abs_phi_s1")[sel], "x-", color="C2")
    ax2.axhline(6, color="0.4", ls="--", lw=0.8, label="decay 1e-6")
    ax2.set_xlabel("k")
    ax2.set_title("-log10 |phi S1| towards 1")
    ax2.legend(loc="upper left")


def plot_boundary_trace(table, ax):
    t = np.linspace(0, 2 * math.pi, 400)
    ax.plot(np.cos(t), np.sin(t), color="0.6", lw=0.8)
    ax.plot([0, 1], [0, 0], color="k", lw=1.5, label="slit [0, 1)")
    ax.plot(_column(table, "h_re"), _column(table, "h_im"), ".", label="radial limits of h")
    ax.set_aspect("equal")
    ax.set_xlim(-1.1, 1.1)
    ax.set_ylim(-1.1, 1.1)
    ax.set_title("Boundary values of h")
    ax.legend(loc="lower left")


def plot_products(table, ax):
    theta = _column(table, "theta")
    m = _column(table, "m")
    sel = theta > 0
    ax.plot(m[sel], _column(table, "above")[sel], "o-", label="n > m")
    ax.plot(m[sel], _column(table, "below")[sel], "s-", label="n < m")
    ax.plot(m[sel], _column(table, "diagonal")[sel], "^-", label="diagonal term")
    ax.axhline(math.tan(math.pi / 8), color="0.4", ls="--", lw=0.8, label="tan(pi/8)")
    ax.set_xlabel("m")
    ax.set_ylabel("partial product")
    ax.set_title("Distance products at 1 - e^(i pi/4)/m!")
    ax.legend(loc="lower right")


FIGURES = {
    "thin_deltas": plot_thin_deltas,
    "paths": plot_paths,
    "boundary_trace": plot_boundary_trace,
    "products": plot_products,
}


# drawn on a whole figure rather than a single axes
WIDE = {"paths"}


def save_figures(report: VerificationReport, directory: str | Path) -> list[Path]:
    """Write one PNG per available profile; returns the written paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    with plt.rc_context(STYLE):
        for name, draw in FIGURES.items():
            if name not in report.profiles:
                continue
            if name in WIDE:
                fig = plt.figure(figsize=(8.5, 3.6))
                draw(report.profiles[name], fig)
            else:
                fig, ax = plt.subplots()
                draw(report.profiles[name], ax)
            fig.tight_layout()
            path = directory / f"{name}.png"
            tmp = path.with_suffix(".png.tmp")
            fig.savefig(tmp, format="png", metadata=_PNG_META)
            plt.close(fig)
            tmp.replace(path)
            written.append(path)
    return written
