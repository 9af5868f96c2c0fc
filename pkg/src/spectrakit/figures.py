"""Static SVG figures of the two planar example sets."""

from __future__ import annotations

import io
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import catalog  # noqa: E402
from .faces2d import SetDescription2D, vectorized  # noqa: E402
from .linmat import char_poly_coeffs  # noqa: E402
from .rigidconv import renegar_chain  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "spectrakit"
matplotlib.rcParams["svg.fonttype"] = "none"


def _grid(bbox, n=600):
    (x0, x1), (y0, y1) = bbox
    return np.meshgrid(np.linspace(x0, x1, n), np.linspace(y0, y1, n))


def _zero_curve(ax, p, X, Y, **style):
    Z = vectorized(p)(X, Y)
    cs = ax.contour(X, Y, Z, levels=[0.0], **style)
    return cs


def _svg(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return buf.getvalue()


def cubic_figure(bbox=catalog.CUBIC_SET_BBOX) -> str:
    """The cubic set with p, p^(1), p^(2), the char-poly curves and the exposing line at (1,0)."""
    p = catalog.poly(catalog.CUBIC)
    chain = renegar_chain(p)
    c = char_poly_coeffs(catalog.CUBIC_PENCIL).c
    S = SetDescription2D.parse(catalog.CUBIC_SET_GENERATORS, catalog.CUBIC_SET_INTERIOR, bbox)
    X, Y = _grid(bbox)
    inside = S.contains(X, Y)
    fig, ax = plt.subplots(figsize=(6.6, 3.2))
    ax.contourf(X, Y, inside.astype(float), levels=[0.5, 1.5], colors=["#c6dbef"])
    _zero_curve(ax, chain[0], X, Y, colors="black", linewidths=1.2)
    _zero_curve(ax, chain[1], X, Y, colors="tab:blue", linewidths=1.0)
    _zero_curve(ax, chain[2], X, Y, colors="tab:green", linewidths=1.0)
    _zero_curve(ax, -c[1], X, Y, colors="tab:red", linewidths=0.8, linestyles="dashed")
    ax.axvline(1.0, color="tab:orange", linewidth=0.8, linestyle="dotted")
    ax.plot([1.0], [0.0], "o", color="tab:orange", markersize=4)
    handles = [
        plt.Line2D([], [], color="black", label="p = 0"),
        plt.Line2D([], [], color="tab:blue", label="p^(1) = 0"),
        plt.Line2D([], [], color="tab:green", label="p^(2) = 0"),
        plt.Line2D([], [], color="tab:red", linestyle="dashed", label="-c1 = 0"),
        plt.Line2D([], [], color="tab:orange", linestyle="dotted", label="t1 = 1"),
    ]
    ax.legend(handles=handles, loc="upper left", fontsize=7)
    ax.set_xlim(*bbox[0])
    ax.set_ylim(*bbox[1])
    ax.set_xlabel("t1")
    ax.set_ylabel("t2")
    ax.set_aspect("equal")
    return _svg(fig)


def corner_figure(bbox=catalog.CORNER_SET_BBOX) -> str:
    """The four-generator set with its non-exposed corner at the origin."""
    S = SetDescription2D.parse(catalog.CORNER_SET_GENERATORS, catalog.CORNER_SET_INTERIOR, bbox)
    X, Y = _grid(bbox)
    inside = S.contains(X, Y)
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    ax.contourf(X, Y, inside.astype(float), levels=[0.5, 1.5], colors=["#c6dbef"])
    ax.contour(X, Y, inside.astype(float), levels=[0.5], colors="black", linewidths=1.0)
    ax.axhline(0.0, color="tab:red", linewidth=0.8, linestyle="dashed")
    ax.plot([0.0], [0.0], "o", color="tab:red", markersize=4)
    ax.annotate("non-exposed face {(0,0)}", xy=(0, 0), xytext=(0.15, -0.6), fontsize=8,
                arrowprops={"arrowstyle": "->", "linewidth": 0.6})
    ax.set_xlim(*bbox[0])
    ax.set_ylim(*bbox[1])
    ax.set_xlabel("t1")
    ax.set_ylabel("t2")
    ax.set_aspect("equal")
    return _svg(fig)


def write_figures(out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, make in (("cubic_set.svg", cubic_figure), ("corner_set.svg", corner_figure)):
        path = out / name
        path.write_text(make(), encoding="utf-8")
        paths.append(path)
    return paths
