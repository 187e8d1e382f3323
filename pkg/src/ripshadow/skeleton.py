"""One-dimensional skeleton of the covered shadow region.

Boundary cycles of the covered region are sampled, the Voronoi diagram of
the samples is computed, and Voronoi edges that stay strictly inside the
region with non-consecutive generators approximate the medial axis.  Leaf
branches shorter than the prune length are removed; bare arrangement edges
(no covered face on either side) are appended unchanged.

This is an uncertified approximation: its Betti numbers are reported, not
guaranteed to match the shadow.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import Voronoi

from .shadow import ShadowComplex


@dataclass
class SkeletonGraph:
    nodes: np.ndarray
    edges: list[tuple[int, int]]
    prune_length: float
    n_boundary_samples: int = 0
    warning: str | None = None

    def betti(self) -> tuple[int, int]:
        n = len(self.nodes)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        used = set()
        for (i, j) in self.edges:
            used.update((i, j))
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
        comps = {find(i) for i in used} if used else set()
        b0 = len(comps)
        b1 = len(self.edges) - len(used) + b0
        return b0, b1

    def total_length(self) -> float:
        return float(sum(np.linalg.norm(self.nodes[i] - self.nodes[j])
                         for (i, j) in self.edges))


def _boundary_cycles(sc: ShadowComplex) -> list[list[int]]:
    """Closed vertex walks bounding the covered region.

    Directed boundary edges keep the covered face on their left; the next
    edge at a junction is found by rotating clockwise past the reverse
    direction, which keeps pinched boundaries consistently paired.
    """
    boundary = set()
    for eid in sc.boundary_edge_ids():
        a, b, _ = sc.edges[eid]
        for de in ((a, b), (b, a)):
            f = sc.faces[sc.face_of[de]]
            if f.positive and f.covered:
                boundary.add(de)
    pos = {}
    for v in range(len(sc.adj)):
        for idx, (w, _) in enumerate(sc.adj[v]):
            pos[(v, w)] = idx
    cycles = []
    remaining = set(boundary)
    while remaining:
        start = min(remaining)
        walk = []
        cur = start
        while True:
            remaining.discard(cur)
            walk.append(cur[0])
            u, v = cur
            deg = len(sc.adj[v])
            idx = pos[(v, u)]
            for step in range(1, deg + 1):
                w = sc.adj[v][(idx - step) % deg][0]
                if (v, w) in boundary:
                    cur = (v, w)
                    break
            if cur == start:
                break
        cycles.append(walk)
    return cycles


def _sample_cycle(sc: ShadowComplex, walk: list[int], spacing: float):
    pts = np.asarray([sc.verts[v].xy for v in walk], dtype=float)
    closed = np.vstack([pts, pts[:1]])
    seg = np.diff(closed, axis=0)
    seglen = np.linalg.norm(seg, axis=1)
    total = float(seglen.sum())
    m = max(4, int(np.ceil(total / spacing)))
    cum = np.concatenate([[0.0], np.cumsum(seglen)])
    ts = np.arange(m) * total / m
    xs = np.interp(ts, cum, closed[:, 0])
    ys = np.interp(ts, cum, closed[:, 1])
    return np.column_stack([xs, ys])


def _inside_covered(sc: ShadowComplex, pts: np.ndarray) -> np.ndarray:
    """Float containment of points in the union of projected triangles."""
    inside = np.zeros(len(pts), dtype=bool)
    if sc.points_float is None or not sc.triangles:
        return inside
    P = sc.points_float
    for (i, j, k) in sc.triangles:
        a, b, c = P[i], P[j], P[k]
        d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if d == 0:
            continue
        todo = ~inside
        if not todo.any():
            break
        q = pts[todo]
        s = ((q[:, 0] - a[0]) * (c[1] - a[1]) - (q[:, 1] - a[1]) * (c[0] - a[0])) / d
        t = ((b[0] - a[0]) * (q[:, 1] - a[1]) - (b[1] - a[1]) * (q[:, 0] - a[0])) / d
        ok = (s >= 0) & (t >= 0) & (s + t <= 1)
        idx = np.nonzero(todo)[0]
        inside[idx[ok]] = True
    return inside


def medial_axis(sc: ShadowComplex, spacing: float, prune: float) -> SkeletonGraph:
    """Approximate medial axis of the covered region, with leaf pruning.

    Bare arrangement edges (covered on neither side) are appended as they
    are.  Without any covered face the bare 1-skeleton is returned with a
    warning.
    """
    if spacing <= 0 or prune < 0:
        raise ValueError("spacing must be positive and prune nonnegative")

    bare = sc.bare_edge_ids()
    covered = sc.covered_faces()
    nodes: list[np.ndarray] = []
    edges: list[tuple[int, int]] = []
    warning = None

    if not covered:
        warning = "no covered faces: returning the bare 1-skeleton"
        warnings.warn(warning)
        n_samples = 0
    else:
        cycles = _boundary_cycles(sc)
        samples = []
        labels = []   # (cycle id, order) per sample
        for ci, walk in enumerate(cycles):
            pts = _sample_cycle(sc, walk, spacing)
            for oi, p in enumerate(pts):
                samples.append(p)
                labels.append((ci, oi, len(pts)))
        samples = np.asarray(samples)
        n_samples = len(samples)
        if n_samples >= 4:
            vor = Voronoi(samples)
            vverts = vor.vertices
            keep_edges = []
            for (g1, g2), (r1, r2) in zip(vor.ridge_points, vor.ridge_vertices):
                if r1 < 0 or r2 < 0:
                    continue
                c1, o1, m1 = labels[g1]
                c2, o2, m2 = labels[g2]
                if c1 == c2:
                    gap = abs(o1 - o2)
                    if min(gap, m1 - gap) <= 1:
                        continue   # consecutive along the boundary
                keep_edges.append((r1, r2))
            if keep_edges:
                ids = sorted({v for e in keep_edges for v in e})
                ok = _inside_covered(sc, vverts[ids])
                good = {vid for vid, flag in zip(ids, ok) if flag}
                remap = {}
                for (r1, r2) in keep_edges:
                    if r1 in good and r2 in good:
                        for r in (r1, r2):
                            if r not in remap:
                                remap[r] = len(nodes)
                                nodes.append(vverts[r])
                        edges.append((remap[r1], remap[r2]))
        edges = _prune_leaves(nodes, edges, prune)

    for eid in bare:
        a, b, _ = sc.edges[eid]
        ia = len(nodes)
        nodes.append(np.asarray(sc.verts[a].xy))
        nodes.append(np.asarray(sc.verts[b].xy))
        edges.append((ia, ia + 1))

    nodes_arr = np.asarray(nodes) if nodes else np.zeros((0, 2))
    return SkeletonGraph(nodes=nodes_arr, edges=edges, prune_length=prune,
                         n_boundary_samples=n_samples, warning=warning)


def _prune_leaves(nodes, edges, prune: float):
    """Iteratively drop leaf branches of total length below the threshold.

    One branch is removed per pass; passes repeat until stable, so stubs
    exposed by earlier removals are pruned as well."""
    if prune <= 0 or not edges:
        return list(edges)
    edges = list(edges)
    while True:
        deg: dict[int, int] = {}
        adj: dict[int, list[tuple[int, int]]] = {}
        for eid, (i, j) in enumerate(edges):
            deg[i] = deg.get(i, 0) + 1
            deg[j] = deg.get(j, 0) + 1
            adj.setdefault(i, []).append((j, eid))
            adj.setdefault(j, []).append((i, eid))
        to_drop = None
        for leaf in (v for v, d in deg.items() if d == 1):
            chain = []
            length = 0.0
            cur, prev = leaf, -1
            while deg[cur] <= 2:
                nxt = [(w, e) for (w, e) in adj[cur] if w != prev]
                if not nxt:
                    break
                w, eid = nxt[0]
                chain.append(eid)
                length += float(np.linalg.norm(nodes[cur] - nodes[w]))
                if length >= prune:
                    break
                prev, cur = cur, w
            if chain and length < prune:
                to_drop = set(chain)
                break
        if to_drop is None:
            return edges
        edges = [e for k, e in enumerate(edges) if k not in to_drop]
