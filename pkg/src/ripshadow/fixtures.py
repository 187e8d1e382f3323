"""Benchmark graphs used by the test suite, the docs and the CLI demos.

All fixtures are planar, connected, and built so that edge pairs share at
most one vertex and incident tangents meet at strictly positive angles
(smooth junctions inside subdivided curves meet at angle pi, which is
allowed).  Curved edges are polylines with dense bendpoints.

Run ``python -m ripshadow.fixtures OUTDIR`` to write all fixture files.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np

from .graphs import EmbeddedGraph


def _arc(center, radius, a0, a1, n=24):
    """Polyline points along a circular arc, endpoints included."""
    ts = np.linspace(a0, a1, n)
    return [(center[0] + radius * math.cos(t), center[1] + radius * math.sin(t))
            for t in ts]


def _add_chain(G: EmbeddedGraph, eid: str, u: str, v: str, pts):
    """Edge u -> v whose polyline interior is pts[1:-1]."""
    G.add_edge(eid, u, v, pts[1:-1])


def cycle_graph(n: int = 24, radius: float = 1.0) -> EmbeddedGraph:
    """Regular n-gon: the basic closed-curve fixture, Betti (1, 1)."""
    G = EmbeddedGraph("cycle")
    for k in range(n):
        t = 2 * math.pi * k / n
        G.add_vertex(f"v{k}", (radius * math.cos(t), radius * math.sin(t)))
    for k in range(n):
        G.add_edge(f"e{k}", f"v{k}", f"v{(k + 1) % n}")
    return G


def theta_graph() -> EmbeddedGraph:
    """Two junction vertices joined by a diameter chord and two half circles.

    Arcs meet the chord at right angles; each arc is split at its apex so
    no two edges share more than one vertex.  Betti (1, 2).
    """
    G = EmbeddedGraph("theta")
    G.add_vertex("L", (-1.0, 0.0))
    G.add_vertex("R", (1.0, 0.0))
    G.add_vertex("M", (0.0, 0.0))
    G.add_vertex("T", (0.0, 1.0))
    G.add_vertex("B", (0.0, -1.0))
    G.add_edge("m1", "L", "M")
    G.add_edge("m2", "M", "R")
    _add_chain(G, "t1", "L", "T", _arc((0, 0), 1.0, math.pi, math.pi / 2))
    _add_chain(G, "t2", "T", "R", _arc((0, 0), 1.0, math.pi / 2, 0.0))
    _add_chain(G, "b1", "L", "B", _arc((0, 0), 1.0, math.pi, 3 * math.pi / 2))
    _add_chain(G, "b2", "B", "R", _arc((0, 0), 1.0, 3 * math.pi / 2, 2 * math.pi))
    return G


def figure_eight(scale: float = 2.0) -> EmbeddedGraph:
    """Two opposite rose petals r = scale * cos(2t) joined at the origin.

    The four petal tangents leave the junction 90 degrees apart, so the
    wedge of two loops has no cusp.  Each petal is split into three edges.
    Betti (1, 2).
    """
    G = EmbeddedGraph("figure_eight")
    G.add_vertex("o", (0.0, 0.0))

    def at(t):
        r = scale * math.cos(2 * t)
        return (r * math.cos(t), r * math.sin(t))

    for name, t0 in (("a", -math.pi / 4), ("b", 3 * math.pi / 4)):
        cuts = [t0 + k * (math.pi / 2) / 3 for k in range(4)]
        ids = ["o"]
        for k in (1, 2):
            vid = f"{name}{k}"
            G.add_vertex(vid, at(cuts[k]))
            ids.append(vid)
        ids.append("o")
        for k in range(3):
            ts = np.linspace(cuts[k], cuts[k + 1], 30)
            _add_chain(G, f"{name}e{k}", ids[k], ids[k + 1], [at(t) for t in ts])
    return G


def five_prong(arm: float = 1.0) -> EmbeddedGraph:
    """Five straight arms from a center vertex, 72 degrees apart.  A tree."""
    G = EmbeddedGraph("five_prong")
    G.add_vertex("c", (0.0, 0.0))
    for k in range(5):
        t = math.pi / 2 + 2 * math.pi * k / 5
        G.add_vertex(f"t{k}", (arm * math.cos(t), arm * math.sin(t)))
        G.add_edge(f"a{k}", "c", f"t{k}")
    return G


def spiral(r0: float = 0.25, growth: float = 0.1, turns: float = 2.0) -> EmbeddedGraph:
    """Archimedean spiral r = r0 + growth * angle; an open curve (tree).

    Split into quarter-turn-pair edges that meet smoothly (angle pi).
    """
    G = EmbeddedGraph("spiral")
    total = turns * 2 * math.pi
    n_edges = max(2, int(round(turns * 2)))
    cuts = np.linspace(0.0, total, n_edges + 1)

    def at(t):
        r = r0 + growth * t
        return (r * math.cos(t), r * math.sin(t))

    for k, t in enumerate(cuts):
        G.add_vertex(f"v{k}", at(t))
    for k in range(n_edges):
        ts = np.linspace(cuts[k], cuts[k + 1], 40)
        pts = [at(t) for t in ts]
        _add_chain(G, f"e{k}", f"v{k}", f"v{k + 1}", pts)
    return G


def u_shape(arm: float = 2.0, gap: float = 0.5) -> EmbeddedGraph:
    """Two parallel arms joined by a half circle; the distortion fixture."""
    G = EmbeddedGraph("u_shape")
    r = gap / 2
    G.add_vertex("a", (arm, gap))
    G.add_vertex("b", (0.0, gap))
    G.add_vertex("c", (0.0, 0.0))
    G.add_vertex("d", (arm, 0.0))
    G.add_edge("top", "a", "b")
    _add_chain(G, "cap", "b", "c", _arc((0, r), r, math.pi / 2, 3 * math.pi / 2))
    G.add_edge("bottom", "c", "d")
    return G


def flower(petals: int = 3, r0: float = 1.0, amp: float = 0.3,
           n: int = 96) -> EmbeddedGraph:
    """Wavy embedded closed curve r = r0 + amp cos(petals t), Betti (1, 1)."""
    G = EmbeddedGraph("flower")
    if amp >= r0:
        raise ValueError("amplitude must stay below the base radius")

    def at(t):
        r = r0 + amp * math.cos(petals * t)
        return (r * math.cos(t), r * math.sin(t))

    n_edges = 4
    per = n // n_edges
    cuts = [2 * math.pi * k / n_edges for k in range(n_edges + 1)]
    for k in range(n_edges):
        G.add_vertex(f"v{k}", at(cuts[k]))
    for k in range(n_edges):
        ts = np.linspace(cuts[k], cuts[k + 1], per + 1)
        pts = [at(t) for t in ts]
        _add_chain(G, f"e{k}", f"v{k}", f"v{(k + 1) % n_edges}", pts)
    return G


def straight_segment(length: float = 1.0) -> EmbeddedGraph:
    G = EmbeddedGraph("segment")
    G.add_vertex("a", (0.0, 0.0))
    G.add_vertex("b", (length, 0.0))
    G.add_edge("e", "a", "b")
    return G


def cusp_graph() -> EmbeddedGraph:
    """Two edges leaving a vertex with the same tangent: violates the
    positive-angle assumption (used to exercise error paths)."""
    G = EmbeddedGraph("cusp")
    G.add_vertex("o", (0.0, 0.0))
    G.add_vertex("p", (1.0, 0.0))
    G.add_vertex("q", (1.0, 0.5))
    G.add_edge("e1", "o", "p")
    _add_chain(G, "e2", "o", "q", [(0, 0), (0.5, 0.0), (0.8, 0.2), (1.0, 0.5)])
    return G


ALL = {
    "cycle": cycle_graph,
    "theta": theta_graph,
    "figure_eight": figure_eight,
    "five_prong": five_prong,
    "spiral": spiral,
    "u_shape": u_shape,
    "flower": flower,
    "segment": straight_segment,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    outdir = Path(argv[0]) if argv else Path("fixtures")
    outdir.mkdir(parents=True, exist_ok=True)
    for name, make in ALL.items():
        path = outdir / f"{name}.graph"
        make().save(path)
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
