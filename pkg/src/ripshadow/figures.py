"""Matplotlib rendering of clouds, graphs, shadows and skeletons.

Figures are written straight to files (Agg backend); the report path of
the CLI emits them next to the delimited report.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.collections import LineCollection
from matplotlib.path import Path as MplPath
from matplotlib.patches import PathPatch

FACE_COLOR = "#cfe0f5"
EDGE_COLOR = "#5b6b86"
GRAPH_COLOR = "#1f4fd0"
CLOUD_COLOR = "#333333"
SKELETON_COLOR = "#8a2fbf"
CROSSING_COLOR = "#d93636"


def _draw_shadow(ax, sc):
    verts = codes = None
    polys = []
    for f in sc.covered_faces():
        cycles = [f.cycle] + [sc.comp_outer_cycle[c] for c in f.holes]
        verts, codes = [], []
        for cyc in cycles:
            pts = [sc.verts[u].xy for (u, _) in cyc]
            if len(pts) < 3:
                continue
            verts.extend(pts + [pts[0]])
            codes.extend([MplPath.MOVETO] + [MplPath.LINETO] * (len(pts) - 1)
                         + [MplPath.CLOSEPOLY])
        if verts:
            polys.append(PathPatch(MplPath(verts, codes), facecolor=FACE_COLOR,
                                   edgecolor="none", zorder=1))
    for p in polys:
        ax.add_patch(p)
    segs = [(sc.verts[a].xy, sc.verts[b].xy) for (a, b, _) in sc.edges]
    ax.add_collection(LineCollection(segs, colors=EDGE_COLOR, linewidths=0.5,
                                     zorder=2))
    cross = np.asarray([v.xy for v in sc.verts if v.tag == "crossing"])
    if len(cross):
        ax.plot(cross[:, 0], cross[:, 1], ".", color=CROSSING_COLOR,
                markersize=2, zorder=3)


def _draw_graph(ax, G):
    for e in G.edges.values():
        ax.plot(e.polyline[:, 0], e.polyline[:, 1], "-", color=GRAPH_COLOR,
                linewidth=1.2, zorder=4)


def _draw_skeleton(ax, skel):
    segs = [(skel.nodes[i], skel.nodes[j]) for (i, j) in skel.edges]
    ax.add_collection(LineCollection(segs, colors=SKELETON_COLOR,
                                     linewidths=1.0, zorder=5))


def render_overview(path, graph=None, cloud=None, sc=None, skeleton=None,
                    title=None, dpi=150):
    """One-panel overview figure: shadow under graph, cloud and skeleton."""
    fig, ax = plt.subplots(figsize=(6, 6))
    if sc is not None:
        _draw_shadow(ax, sc)
    if graph is not None:
        _draw_graph(ax, graph)
    if cloud is not None:
        ax.plot(cloud.points[:, 0], cloud.points[:, 1], ".",
                color=CLOUD_COLOR, markersize=3, zorder=6)
    if skeleton is not None:
        _draw_skeleton(ax, skeleton)
    ax.set_aspect("equal")
    ax.autoscale_view()
    if title:
        ax.set_title(title, fontsize=9)
    ax.set_xticks([])
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path


def render_comparison(path, panels, dpi=150):
    """Side-by-side panels; each entry is (title, dict of draw arguments)."""
    n = len(panels)
    fig, axes = plt.subplots(1, n, figsize=(5 * n, 5))
    if n == 1:
        axes = [axes]
    for ax, (title, parts) in zip(axes, panels):
        if parts.get("sc") is not None:
            _draw_shadow(ax, parts["sc"])
        if parts.get("graph") is not None:
            _draw_graph(ax, parts["graph"])
        if parts.get("cloud") is not None:
            ax.plot(parts["cloud"].points[:, 0], parts["cloud"].points[:, 1],
                    ".", color=CLOUD_COLOR, markersize=3, zorder=6)
        if parts.get("skeleton") is not None:
            _draw_skeleton(ax, parts["skeleton"])
        ax.set_aspect("equal")
        ax.autoscale_view()
        ax.set_title(title, fontsize=9)
        ax.set_xticks([])
        ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
