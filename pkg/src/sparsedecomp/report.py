"""Figure rendering for decompositions and colorings.

Vertices sit on a circle; each edge class gets its own color and line
style plus a legend entry. Rendering is headless (Agg canvas) and only
touches matplotlib when actually asked to draw.
"""

from __future__ import annotations

import math

from .decompose import K_FORESTS, Decomposition
from .graphs import Graph
from .ramsey import RamseyColoring

_STYLES = ["solid", "dashed", "dashdot", "dotted"]
_COLORS = [
    "tab:blue", "tab:red", "tab:green", "tab:orange",
    "tab:purple", "tab:brown", "tab:pink", "tab:gray",
]


def _positions(n: int):
    if n == 1:
        return [(0.0, 0.0)]
    return [
        (math.cos(2 * math.pi * k / n - math.pi / 2),
         math.sin(2 * math.pi * k / n - math.pi / 2))
        for k in range(n)
    ]


def render_edge_partition(g: Graph, named_parts, path, title: str | None = None):
    """Draw the graph with one style per named edge class and save it.

    ``named_parts`` is a sequence of (label, edge set) pairs covering
    the edges to display. The output format follows the file suffix.
    """
    from matplotlib.backends.backend_agg import FigureCanvasAgg
    from matplotlib.figure import Figure

    fig = Figure(figsize=(5.0, 5.0))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot(111)
    pos = _positions(max(g.n, 1))
    for idx, (label, edges) in enumerate(named_parts):
        color = _COLORS[idx % len(_COLORS)]
        style = _STYLES[idx % len(_STYLES)]
        first = True
        for u, v in sorted(edges):
            ax.plot(
                [pos[u][0], pos[v][0]], [pos[u][1], pos[v][1]],
                color=color, linestyle=style, linewidth=1.8,
                label=f"{label} ({len(edges)})" if first else None,
                zorder=1,
            )
            first = False
        if first:
            ax.plot([], [], color=color, linestyle=style,
                    label=f"{label} (0)")
    xs = [p[0] for p in pos[: g.n]]
    ys = [p[1] for p in pos[: g.n]]
    ax.scatter(xs, ys, s=160, color="white", edgecolors="black", zorder=2)
    for v in range(g.n):
        ax.annotate(str(v), pos[v], ha="center", va="center", fontsize=8,
                    zorder=3)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title)
    if g.edges or g.n:
        ax.legend(loc="upper right", fontsize=7, framealpha=0.9)
    fig.savefig(path, bbox_inches="tight", dpi=150)


def render_decomposition(dec: Decomposition, path, title: str | None = None):
    if dec.mode == K_FORESTS:
        parts = [(f"forest {i + 1}", part) for i, part in enumerate(dec.parts)]
    else:
        first = "pseudoforest" if dec.mode == "pseudoforest_m2" else "forest"
        parts = [(first, dec.part_f), ("rest", dec.part_rest)]
    render_edge_partition(dec.graph, parts, path, title=title or dec.mode)


def render_coloring(c: RamseyColoring, path, title: str | None = None):
    parts = [("color 1", c.color1_edges), ("color 2", c.color2_edges)]
    render_edge_partition(c.graph, parts, path,
                          title=title or f"branch: {c.branch}")
