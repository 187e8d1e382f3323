"""Embedded metric graphs: length metric, systole, vertex angles, Betti numbers.

A graph lives in R^N as vertices plus polyline edges (bendpoints are shape
only, not graph vertices).  Interior points of edges are addressed by
(edge id, arclength parameter).  The length metric between any two such
points is computed exactly on the polyline subdivision, never approximated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

HOMOTOPY = "homotopy"
GEOMETRIC = "geometric"


@dataclass(frozen=True)
class GraphPoint:
    """A point of the graph: either a vertex or an interior edge point."""

    edge: str | None = None
    t: float = 0.0              # arclength from the edge's u endpoint
    vertex: str | None = None

    def __post_init__(self):
        if (self.edge is None) == (self.vertex is None):
            raise ValueError("GraphPoint needs exactly one of edge or vertex")


class Edge:
    def __init__(self, eid: str, u: str, v: str, polyline: np.ndarray):
        self.id = eid
        self.u = u
        self.v = v
        self.polyline = polyline          # (k, N) including both endpoints
        seg = np.diff(polyline, axis=0)
        self.seg_lengths = np.linalg.norm(seg, axis=1)
        if np.any(self.seg_lengths <= 0):
            raise ValueError(f"edge {eid}: polyline has a zero-length segment")
        self.cumlen = np.concatenate([[0.0], np.cumsum(self.seg_lengths)])
        self.length = float(self.cumlen[-1])

    def point_at(self, t: float) -> np.ndarray:
        """Coordinates of the point at arclength t from the u endpoint."""
        t = min(max(t, 0.0), self.length)
        out = np.empty(self.polyline.shape[1])
        for k in range(self.polyline.shape[1]):
            out[k] = np.interp(t, self.cumlen, self.polyline[:, k])
        return out

    def direction_from(self, end: str) -> np.ndarray:
        """Unit tangent pointing away from the given endpoint ('u' or 'v')."""
        if end == "u":
            d = self.polyline[1] - self.polyline[0]
        else:
            d = self.polyline[-2] - self.polyline[-1]
        return d / np.linalg.norm(d)


class EmbeddedGraph:
    def __init__(self, name: str = "graph"):
        self.name = name
        self.vertices: dict[str, np.ndarray] = {}
        self.edges: dict[str, Edge] = {}
        self.dim: int | None = None

    def add_vertex(self, vid: str, coords) -> None:
        coords = np.asarray(coords, dtype=float)
        if self.dim is None:
            self.dim = len(coords)
        elif len(coords) != self.dim:
            raise ValueError("all vertices must share one ambient dimension")
        if not np.all(np.isfinite(coords)):
            raise ValueError("vertex coordinates must be finite")
        self.vertices[str(vid)] = coords

    def add_edge(self, eid: str, u: str, v: str, bendpoints=()) -> None:
        u, v = str(u), str(v)
        pts = [self.vertices[u]]
        pts += [np.asarray(b, dtype=float) for b in bendpoints]
        pts.append(self.vertices[v])
        self.edges[str(eid)] = Edge(str(eid), u, v, np.vstack(pts))

    def point_coords(self, gp: GraphPoint) -> np.ndarray:
        if gp.vertex is not None:
            return self.vertices[gp.vertex]
        return self.edges[gp.edge].point_at(gp.t)

    def total_length(self) -> float:
        return sum(e.length for e in self.edges.values())

    def segments(self):
        """All polyline segments of all edges, as (a, b) coordinate pairs."""
        for e in self.edges.values():
            for i in range(len(e.polyline) - 1):
                yield e.polyline[i], e.polyline[i + 1]

    # ---- file format: line-oriented text, '#' comments -------------------
    # v <id> <x> <y> [...]
    # e <id> <u> <v> [x1 y1 x2 y2 ...]   bendpoint coordinates, flattened

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(f"# graph {self.name} dim={self.dim}\n")
            for vid in self.vertices:
                coords = " ".join(repr(float(c)) for c in self.vertices[vid])
                fh.write(f"v {vid} {coords}\n")
            for eid, e in self.edges.items():
                bend = e.polyline[1:-1]
                flat = " ".join(repr(float(c)) for b in bend for c in b)
                line = f"e {eid} {e.u} {e.v}"
                if flat:
                    line += " " + flat
                fh.write(line + "\n")

    @classmethod
    def load(cls, path) -> "EmbeddedGraph":
        g = cls(name=str(path))
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                tok = line.split()
                try:
                    if tok[0] == "v":
                        g.add_vertex(tok[1], [float(x) for x in tok[2:]])
                    elif tok[0] == "e":
                        flat = [float(x) for x in tok[4:]]
                        if g.dim is None or len(flat) % g.dim:
                            if flat:
                                raise ValueError("bendpoint coordinate count mismatch")
                        bends = [flat[i:i + g.dim] for i in range(0, len(flat), g.dim)]
                        g.add_edge(tok[1], tok[2], tok[3], bends)
                    else:
                        raise ValueError(f"unknown record {tok[0]!r}")
                except (IndexError, ValueError, KeyError) as exc:
                    raise ValueError(f"{path}:{lineno}: {exc}") from exc
        if not g.vertices:
            raise ValueError(f"{path}: empty graph file")
        return g


# ---------------------------------------------------------------------------
# length metric
# ---------------------------------------------------------------------------

class GraphMetric:
    """Shortest-path metric of an embedded graph, exact on the polylines.

    Vertex-to-vertex distances are precomputed; distances involving interior
    edge points split their edges at the query parameter.  Immutable after
    construction; concurrent queries are safe.
    """

    def __init__(self, graph: EmbeddedGraph):
        self.graph = graph
        self.vertex_ids = list(graph.vertices)
        self.vindex = {v: i for i, v in enumerate(self.vertex_ids)}
        n = len(self.vertex_ids)
        weights: dict[tuple[int, int], float] = {}
        for e in graph.edges.values():
            i, j = self.vindex[e.u], self.vindex[e.v]
            if i == j:
                continue  # self-loops never shorten paths
            key = (min(i, j), max(i, j))
            w = weights.get(key)
            if w is None or e.length < w:
                weights[key] = e.length
        if weights:
            rows = [k[0] for k in weights] + [k[1] for k in weights]
            cols = [k[1] for k in weights] + [k[0] for k in weights]
            vals = list(weights.values()) * 2
            mat = csr_matrix((vals, (rows, cols)), shape=(n, n))
        else:
            mat = csr_matrix((n, n))
        self._mat = mat
        self.D = dijkstra(mat, directed=False)
        np.fill_diagonal(self.D, 0.0)

    # ---- anchors: (u_index, dist to u, v_index, dist to v, edge key) -----

    def _anchor(self, gp: GraphPoint):
        if gp.vertex is not None:
            i = self.vindex[gp.vertex]
            return i, 0.0, i, 0.0, None
        e = self.graph.edges[gp.edge]
        t = min(max(gp.t, 0.0), e.length)
        return self.vindex[e.u], t, self.vindex[e.v], e.length - t, gp.edge

    def distance(self, a: GraphPoint, b: GraphPoint) -> float:
        ua, ta, va, sa, ea = self._anchor(a)
        ub, tb, vb, sb, eb = self._anchor(b)
        best = min(ta + self.D[ua, ub] + tb,
                   ta + self.D[ua, vb] + sb,
                   sa + self.D[va, ub] + tb,
                   sa + self.D[va, vb] + sb)
        if ea is not None and ea == eb:
            best = min(best, abs(ta - tb))
        return float(best)

    def distance_matrix(self, gps: list[GraphPoint]) -> np.ndarray:
        """All-pairs length-metric distances for a list of graph points."""
        m = len(gps)
        u = np.empty(m, dtype=int)
        v = np.empty(m, dtype=int)
        a = np.empty(m)
        b = np.empty(m)
        ekey = np.full(m, -1, dtype=int)
        edge_ids = {eid: k for k, eid in enumerate(self.graph.edges)}
        for i, gp in enumerate(gps):
            ui, ti, vi, si, ei = self._anchor(gp)
            u[i], a[i], v[i], b[i] = ui, ti, vi, si
            if ei is not None:
                ekey[i] = edge_ids[ei]
        D = self.D
        M = a[:, None] + D[np.ix_(u, u)] + a[None, :]
        np.minimum(M, a[:, None] + D[np.ix_(u, v)] + b[None, :], out=M)
        np.minimum(M, b[:, None] + D[np.ix_(v, u)] + a[None, :], out=M)
        np.minimum(M, b[:, None] + D[np.ix_(v, v)] + b[None, :], out=M)
        same = (ekey[:, None] == ekey[None, :]) & (ekey[:, None] >= 0)
        if same.any():
            direct = np.abs(a[:, None] - a[None, :])
            M[same] = np.minimum(M[same], direct[same])
        return M

    def vertex_distance(self, u: str, v: str) -> float:
        return float(self.D[self.vindex[u], self.vindex[v]])

    def diameter(self) -> float:
        """Intrinsic diameter estimated over vertices and edge midpoints."""
        gps = [GraphPoint(vertex=v) for v in self.vertex_ids]
        gps += [GraphPoint(edge=e.id, t=e.length / 2) for e in self.graph.edges.values()]
        M = self.distance_matrix(gps)
        return float(M.max())

    def is_connected(self) -> bool:
        ncomp, _ = connected_components(self._mat, directed=False)
        return ncomp <= 1


def length_metric(G: EmbeddedGraph) -> GraphMetric:
    return GraphMetric(G)


# ---------------------------------------------------------------------------
# systole, Betti numbers, angle constant, assumption checks
# ---------------------------------------------------------------------------

def systole(G: EmbeddedGraph) -> float:
    """Length of the shortest simple cycle; +inf when the graph has none.

    Computed per edge e as len(e) + d(u, v) in G minus e; a self-loop is a
    cycle of its own length.
    """
    vids = list(G.vertices)
    vindex = {v: i for i, v in enumerate(vids)}
    n = len(vids)
    best = math.inf
    edges = list(G.edges.values())
    for e in edges:
        if e.u == e.v:
            best = min(best, e.length)
    for skip in edges:
        if skip.u == skip.v:
            continue
        weights: dict[tuple[int, int], float] = {}
        for e in edges:
            if e.id == skip.id or e.u == e.v:
                continue
            i, j = vindex[e.u], vindex[e.v]
            key = (min(i, j), max(i, j))
            w = weights.get(key)
            if w is None or e.length < w:
                weights[key] = e.length
        if not weights:
            continue
        rows = [k[0] for k in weights] + [k[1] for k in weights]
        cols = [k[1] for k in weights] + [k[0] for k in weights]
        vals = list(weights.values()) * 2
        mat = csr_matrix((vals, (rows, cols)), shape=(n, n))
        d = dijkstra(mat, directed=False, indices=vindex[skip.u])[vindex[skip.v]]
        if math.isfinite(d):
            best = min(best, skip.length + d)
    return best


def betti_graph(G: EmbeddedGraph) -> tuple[int, int]:
    """(b0, b1) of the graph: components and independent cycles."""
    vids = list(G.vertices)
    vindex = {v: i for i, v in enumerate(vids)}
    parent = list(range(len(vids)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in G.edges.values():
        a, b = find(vindex[e.u]), find(vindex[e.v])
        if a != b:
            parent[a] = b
    b0 = len({find(i) for i in range(len(vids))})
    b1 = len(G.edges) - len(vids) + b0
    return b0, b1


def incident_angle_pairs(G: EmbeddedGraph):
    """Yield (vertex id, edge id 1, edge id 2, angle) for edge ends meeting
    at a common vertex.  Tangents point away from the vertex along the first
    polyline segment; a self-loop contributes the pair of its own two ends."""
    ends: dict[str, list[tuple[str, np.ndarray]]] = {v: [] for v in G.vertices}
    for e in G.edges.values():
        ends[e.u].append((e.id, e.direction_from("u")))
        ends[e.v].append((e.id, e.direction_from("v")))
    for vid, lst in ends.items():
        for i in range(len(lst)):
            for j in range(i + 1, len(lst)):
                d = float(np.clip(np.dot(lst[i][1], lst[j][1]), -1.0, 1.0))
                yield vid, lst[i][0], lst[j][0], math.acos(d)


def min_incident_angle(G: EmbeddedGraph) -> float:
    """Smallest angle between incident edge tangents; +inf if no pairs."""
    return min((a for _, _, _, a in incident_angle_pairs(G)), default=math.inf)


ANGLE_ZERO_TOL = 1e-12


def vertex_angle_constant(G: EmbeddedGraph) -> float:
    """max(1/2, cos^2(half the minimum incident-edge angle)), in [1/2, 1).

    A single-edge graph, or any graph without incident pairs, yields 1/2.
    A zero incident angle (cusp) is rejected: the constant would reach 1.
    """
    a = min_incident_angle(G)
    if a is math.inf:
        return 0.5
    if a <= ANGLE_ZERO_TOL:
        raise ValueError("zero incident angle (cusp): angle condition violated, "
                         "constant would be 1")
    return max(0.5, math.cos(a / 2.0) ** 2)


@dataclass
class AssumptionReport:
    mode: str
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_assumptions(G: EmbeddedGraph, mode: str = HOMOTOPY) -> AssumptionReport:
    """Check the regularity assumptions for the requested reconstruction mode.

    Homotopy mode needs compactness (finitely many edges, always true here)
    plus connectivity.  Geometric mode additionally needs a planar graph,
    no edge pair sharing two vertices, and strictly positive incident angles.
    Returns a structured report, never raises.
    """
    rep = AssumptionReport(mode=mode)
    if not G.vertices:
        rep.violations.append("A1: graph has no vertices")
        return rep
    metric = GraphMetric(G)
    if not metric.is_connected():
        rep.violations.append("A1: graph is not connected")
    if mode == HOMOTOPY:
        return rep
    if mode != GEOMETRIC:
        rep.violations.append(f"unknown mode {mode!r}")
        return rep
    if G.dim != 2:
        rep.violations.append(f"geometric mode needs a planar graph, dim={G.dim}")
    edges = list(G.edges.values())
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            shared = {edges[i].u, edges[i].v} & {edges[j].u, edges[j].v}
            if len(shared) > 1:
                rep.violations.append(
                    f"A2: edges {edges[i].id} and {edges[j].id} share vertices "
                    f"{sorted(shared)}")
    for vid, e1, e2, ang in incident_angle_pairs(G):
        if ang <= ANGLE_ZERO_TOL:
            rep.violations.append(
                f"A4: zero angle between edges {e1} and {e2} at vertex {vid}")
    return rep
