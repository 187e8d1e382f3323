"""Planar shadow of a complex: exact arrangement, faces, Betti numbers,
path-lifting check, Hausdorff estimate and SVG rendering.

The shadow of a complex with planar vertex coordinates is the union of the
convex hulls of its simplices.  Its combinatorial skeleton is the
arrangement of the projected 1-simplices: crossing vertices are inserted
where two projected edges cross transversely, edges are split so that no
arrangement edge contains another vertex in its interior, and every bounded
face is tagged covered when a representative interior point lies inside
some projected triangle (closed hulls).

All topology here is exact: coordinates are snapped to the decimal lattice
and crossing points are kept as homogeneous integer triples, so face walks
and coverage flags are deterministic functions of the snapped input.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.spatial import cKDTree

from .geometry import (CCW, COLLINEAR, EXTERIOR, SNAP_DIGITS, TRANSVERSE,
                       hpoint, hpoint_normalize, hpoint_to_fractions,
                       orient_h, point_in_triangle_lattice, point_segment_distance,
                       segment_intersect_lattice, snap_scale)
from .complexes import FlagComplex

ORIGINAL = "original"
CROSSING = "crossing"


@dataclass
class ArrVertex:
    h: tuple[int, int, int]          # homogeneous lattice coordinates, w > 0
    xy: tuple[float, float]          # input units
    tag: str                         # ORIGINAL or CROSSING
    ref: object                      # point index, or (edge_i, edge_j) pair


@dataclass
class Face:
    cycle: list[tuple[int, int]]     # directed (u, v) arrangement vertex pairs
    comp: int
    positive: bool
    area: float
    covered: bool = False
    rep: tuple[float, float] | None = None
    rep_exact: tuple[int, int, int] | None = None
    holes: list[int] = field(default_factory=list)   # nested component ids


@dataclass
class LiftingReport:
    examined: int = 0
    satisfied_a: int = 0
    satisfied_b: int = 0
    violations: list[tuple[tuple[int, int], tuple[int, int]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


class ShadowComplex:
    """Arrangement of the projected 1-simplices with covered-face tags."""

    def __init__(self, digits: int = SNAP_DIGITS):
        self.digits = digits
        self.verts: list[ArrVertex] = []
        self.edges: list[tuple[int, int, int]] = []   # (a, b, parent K-edge index)
        self.adj: list[list[tuple[int, int]]] = []    # per vertex, CCW (nbr, edge)
        self.faces: list[Face] = []
        self.face_of: dict[tuple[int, int], int] = {}
        self.comp_of: list[int] = []
        self.n_components = 0
        self.comp_outer_cycle: list[list[tuple[int, int]]] = []
        self.comp_parent_face: list[int | None] = []
        self.triangles: list[tuple[int, int, int]] = []         # K vertex triples
        self.tri_lattice: list[tuple] = []                      # lattice coord triples
        self.point_lattice: list[tuple[int, int]] = []          # per K vertex
        self.points_float: np.ndarray | None = None

    # ------------------------------------------------------------------
    @property
    def n_vertices(self) -> int:
        return len(self.verts)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def bounded_faces(self):
        return [f for f in self.faces if f.positive]

    def covered_faces(self):
        return [f for f in self.faces if f.positive and f.covered]

    def euler_characteristic(self) -> int:
        """V - E + sum over covered faces of (1 - number of nested holes)."""
        return (self.n_vertices - self.n_edges
                + sum(1 - len(f.holes) for f in self.covered_faces()))

    def betti(self) -> tuple[int, int]:
        """(b0, b1) of the shadow as a compact planar set.

        b0 starts from the components of the 1-skeleton; a covered face
        absorbs any component nested inside it.  b1 = b0 - chi, valid since
        H2 of a compact planar set vanishes.
        """
        parent = list(range(self.n_components))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for f in self.covered_faces():
            for c in f.holes:
                a, b = find(f.comp), find(c)
                if a != b:
                    parent[a] = b
        b0 = len({find(c) for c in range(self.n_components)})
        b1 = b0 - self.euler_characteristic()
        return b0, b1

    # ---- edge side classification ------------------------------------
    def edge_sides(self, eid: int) -> tuple[bool, bool]:
        """covered flags of the faces on the two sides of an edge."""
        a, b, _ = self.edges[eid]
        out = []
        for de in ((a, b), (b, a)):
            f = self.faces[self.face_of[de]]
            out.append(f.positive and f.covered)
        return out[0], out[1]

    def boundary_edge_ids(self) -> list[int]:
        return [e for e in range(self.n_edges)
                if self.edge_sides(e)[0] != self.edge_sides(e)[1]]

    def bare_edge_ids(self) -> list[int]:
        return [e for e in range(self.n_edges)
                if self.edge_sides(e) == (False, False)]

    def bbox(self) -> tuple[float, float, float, float]:
        xs = [v.xy[0] for v in self.verts]
        ys = [v.xy[1] for v in self.verts]
        if not xs:
            return (0.0, 0.0, 1.0, 1.0)
        return (min(xs), min(ys), max(xs), max(ys))

    # ---- dump: V / E / F lines ---------------------------------------
    def dump(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(f"# shadow digits={self.digits}\n")
            for i, v in enumerate(self.verts):
                ref = (v.ref if v.tag == ORIGINAL
                       else f"{v.ref[0]}:{v.ref[1]}")
                fh.write(f"V {i} {v.tag} {ref} {v.xy[0]!r} {v.xy[1]!r}\n")
            for i, (a, b, parent) in enumerate(self.edges):
                fh.write(f"E {i} {a} {b} {parent}\n")
            for i, f in enumerate(self.faces):
                if not f.positive:
                    continue
                cyc = " ".join(str(u) for (u, _) in f.cycle)
                fh.write(f"F {i} {int(f.covered)} {cyc}\n")


def load_shadow_dump(path):
    """Read back a shadow dump as plain geometry for rendering.

    Returns (vertices, tags, edges, faces) where faces are
    (covered, [vertex ids]) tuples.
    """
    verts: dict[int, tuple[float, float]] = {}
    tags: dict[int, str] = {}
    edges = []
    faces = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tok = line.split()
            try:
                if tok[0] == "V":
                    verts[int(tok[1])] = (float(tok[4]), float(tok[5]))
                    tags[int(tok[1])] = tok[2]
                elif tok[0] == "E":
                    edges.append((int(tok[2]), int(tok[3])))
                elif tok[0] == "F":
                    faces.append((bool(int(tok[2])), [int(t) for t in tok[3:]]))
                else:
                    raise ValueError(f"unknown record {tok[0]!r}")
            except (IndexError, ValueError) as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return verts, tags, edges, faces


# ---------------------------------------------------------------------------
# candidate segment pairs via a uniform grid on float bounding boxes
# ---------------------------------------------------------------------------

def _grid_cells(bb, cell):
    x0, y0, x1, y1 = bb
    for cx in range(int(np.floor(x0 / cell)), int(np.floor(x1 / cell)) + 1):
        for cy in range(int(np.floor(y0 / cell)), int(np.floor(y1 / cell)) + 1):
            yield (cx, cy)


def _candidate_pairs(boxes):
    """Indices of box pairs that overlap, via uniform grid hashing."""
    if len(boxes) < 2:
        return []
    sizes = [max(b[2] - b[0], b[3] - b[1]) for b in boxes]
    cell = max(float(np.median(sizes)), 1e-12)
    grid: dict[tuple[int, int], list[int]] = {}
    for i, b in enumerate(boxes):
        for c in _grid_cells(b, cell):
            grid.setdefault(c, []).append(i)
    pairs = set()
    for members in grid.values():
        for ii in range(len(members)):
            bi = boxes[members[ii]]
            for jj in range(ii + 1, len(members)):
                j = members[jj]
                bj = boxes[j]
                if (bi[0] <= bj[2] and bj[0] <= bi[2]
                        and bi[1] <= bj[3] and bj[1] <= bi[3]):
                    pairs.add((min(members[ii], j), max(members[ii], j)))
    return sorted(pairs)


def _seg_box(a, b):
    return (min(a[0], b[0]), min(a[1], b[1]), max(a[0], b[0]), max(a[1], b[1]))


# ---------------------------------------------------------------------------
# exact helpers on homogeneous points
# ---------------------------------------------------------------------------

def _hy_key(h):
    return (Fraction(h[1], h[2]), Fraction(h[0], h[2]))


def _on_open_segment(p, a, b) -> bool:
    """Homogeneous p strictly inside the lattice segment ab (collinear test

    included)."""
    ha, hb = hpoint(*a), hpoint(*b)
    if orient_h(ha, hb, p) != COLLINEAR:
        return False
    w = p[2]
    if a[0] != b[0]:
        lo, hi = min(a[0], b[0]), max(a[0], b[0])
        return lo * w < p[0] < hi * w
    lo, hi = min(a[1], b[1]), max(a[1], b[1])
    return lo * w < p[1] < hi * w


def _dir_cmp_key(v_h):
    """CCW angular comparator around a vertex, exact on integers."""

    def cmp(e1, e2):
        d1, d2 = e1[2], e2[2]
        h1 = 0 if (d1[1] > 0 or (d1[1] == 0 and d1[0] > 0)) else 1
        h2 = 0 if (d2[1] > 0 or (d2[1] == 0 and d2[0] > 0)) else 1
        if h1 != h2:
            return -1 if h1 < h2 else 1
        cr = d1[0] * d2[1] - d1[1] * d2[0]
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    return functools.cmp_to_key(cmp)


def _direction(hv, hw):
    """Integer direction vector of hw as seen from hv."""
    return (hw[0] * hv[2] - hv[0] * hw[2], hw[1] * hv[2] - hv[1] * hw[2])


# ---------------------------------------------------------------------------
# arrangement construction
# ---------------------------------------------------------------------------

def transverse_crossing_pairs(segments):
    """All pairs of lattice segments crossing at interior points.

    ``segments`` is a list of (a, b) lattice endpoint pairs; returns
    (i, j, point_h) triples.
    """
    boxes = [_seg_box(a, b) for a, b in segments]
    out = []
    for i, j in _candidate_pairs(boxes):
        res = segment_intersect_lattice(*segments[i], *segments[j])
        if res.kind == TRANSVERSE:
            out.append((i, j, res.point_exact))
    return out


def project(K: FlagComplex, coords, digits: int = SNAP_DIGITS) -> ShadowComplex:
    """Build the shadow complex of K under 2D vertex coordinates."""
    P = np.atleast_2d(np.asarray(coords, dtype=float))
    if P.shape[1] != 2:
        raise ValueError("shadow projection needs planar coordinates")
    if P.shape[0] != K.n:
        raise ValueError("coordinate count does not match complex vertices")

    sc = ShadowComplex(digits=digits)
    sc.points_float = P
    s = snap_scale(digits)
    lat = [(round(float(x) * s), round(float(y) * s)) for x, y in P]
    sc.point_lattice = lat

    # arrangement vertices, deduplicated on exact coordinates
    vmap: dict[tuple[int, int, int], int] = {}

    def intern(h, tag, ref):
        h = hpoint_normalize(h)
        vid = vmap.get(h)
        if vid is None:
            vid = len(sc.verts)
            vmap[h] = vid
            sc.verts.append(ArrVertex(h=h, xy=(h[0] / (h[2] * s), h[1] / (h[2] * s)),
                                      tag=tag, ref=ref))
        return vid

    for pi in range(K.n):
        intern(hpoint(*lat[pi]), ORIGINAL, pi)

    # distinct projected segments (K edges may collapse or coincide)
    seg_by_key: dict[tuple, list[int]] = {}
    for kei, (i, j) in enumerate(K.edges):
        a, b = lat[i], lat[j]
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        seg_by_key.setdefault(key, []).append(kei)
    segments = [key for key in seg_by_key]
    seg_parent = [seg_by_key[key][0] for key in segments]

    # split points per segment: vertex ids keyed by position along the segment
    splits: list[set[int]] = [set() for _ in segments]

    boxes = [_seg_box(a, b) for a, b in segments]
    for i, j in _candidate_pairs(boxes):
        res = segment_intersect_lattice(*segments[i], *segments[j])
        if res.kind == TRANSVERSE:
            vid = intern(res.point_exact, CROSSING,
                         (seg_parent[i], seg_parent[j]))
            splits[i].add(vid)
            splits[j].add(vid)

    # any arrangement vertex interior to a segment splits it (original points,
    # collinear-overlap endpoints, T-junctions, and multi-crossing points)
    if segments:
        vert_boxes = []
        all_vids = list(range(len(sc.verts)))
        for vid in all_vids:
            x, y = sc.verts[vid].h[0] / sc.verts[vid].h[2], sc.verts[vid].h[1] / sc.verts[vid].h[2]
            vert_boxes.append((x, y, x, y))
        sizes = [max(b[2] - b[0], b[3] - b[1]) for b in boxes]
        cell = max(float(np.median(sizes)), 1e-12)
        grid: dict[tuple[int, int], list[int]] = {}
        for si, b in enumerate(boxes):
            for c in _grid_cells(b, cell):
                grid.setdefault(c, []).append(si)
        for vid in all_vids:
            h = sc.verts[vid].h
            cx = int(np.floor((h[0] / h[2]) / cell))
            cy = int(np.floor((h[1] / h[2]) / cell))
            for si in grid.get((cx, cy), ()):
                if _on_open_segment(h, *segments[si]):
                    splits[si].add(vid)

    # split segments into arrangement edges, deduplicated
    edge_map: dict[tuple[int, int], int] = {}
    for si, (a, b) in enumerate(segments):
        va = vmap[hpoint_normalize(hpoint(*a))]
        vb = vmap[hpoint_normalize(hpoint(*b))]
        chain = [va, vb] + list(splits[si])
        # order along the segment by the dominant axis, exactly
        axis = 0 if abs(b[0] - a[0]) >= abs(b[1] - a[1]) else 1
        rev = (b[axis] < a[axis])

        def poskey(vid):
            h = sc.verts[vid].h
            return Fraction(h[axis], h[2])

        chain = sorted(set(chain), key=poskey, reverse=rev)
        for u, v in zip(chain, chain[1:]):
            key = (min(u, v), max(u, v))
            if key not in edge_map and u != v:
                edge_map[key] = len(sc.edges)
                sc.edges.append((key[0], key[1], seg_parent[si]))

    _build_topology(sc)

    # projected triangles, for coverage and sampling
    tri_seen = set()
    for (i, j, k) in K.simplices.get(2, ()):
        tkey = tuple(sorted((lat[i], lat[j], lat[k])))
        if tkey in tri_seen:
            continue
        tri_seen.add(tkey)
        sc.triangles.append((i, j, k))
        sc.tri_lattice.append((lat[i], lat[j], lat[k]))

    _classify_faces(sc)
    return sc


def _build_topology(sc: ShadowComplex) -> None:
    """Adjacency, face walk, components, nesting."""
    nv = len(sc.verts)
    sc.adj = [[] for _ in range(nv)]
    for eid, (a, b, _) in enumerate(sc.edges):
        sc.adj[a].append((b, eid))
        sc.adj[b].append((a, eid))
    for v in range(nv):
        hv = sc.verts[v].h
        entries = [(w, eid, _direction(hv, sc.verts[w].h)) for (w, eid) in sc.adj[v]]
        entries.sort(key=_dir_cmp_key(hv))
        sc.adj[v] = [(w, eid) for (w, eid, _) in entries]

    # components over edges; isolated vertices are their own components
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b, _) in sc.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    roots: dict[int, int] = {}
    sc.comp_of = [0] * nv
    for v in range(nv):
        r = find(v)
        if r not in roots:
            roots[r] = len(roots)
        sc.comp_of[v] = roots[r]
    sc.n_components = len(roots)

    # face walk: next directed edge after (u -> v) turns to the neighbor of v
    # immediately clockwise from u, which traces faces with interior on the left
    pos_in_adj = {}
    for v in range(nv):
        for idx, (w, _) in enumerate(sc.adj[v]):
            pos_in_adj[(v, w)] = idx
    visited = set()
    sc.faces = []
    sc.face_of = {}
    frac_cache: dict[int, tuple[Fraction, Fraction]] = {}

    def fxy(v):
        f = frac_cache.get(v)
        if f is None:
            f = hpoint_to_fractions(sc.verts[v].h)
            frac_cache[v] = f
        return f

    for (a, b, _) in sc.edges:
        for start in ((a, b), (b, a)):
            if start in visited:
                continue
            cycle = []
            cur = start
            while True:
                visited.add(cur)
                cycle.append(cur)
                u, v = cur
                idx = pos_in_adj[(v, u)]
                w = sc.adj[v][(idx - 1) % len(sc.adj[v])][0]
                cur = (v, w)
                if cur == start:
                    break
            area2 = Fraction(0)
            for (u, v) in cycle:
                xu, yu = fxy(u)
                xv, yv = fxy(v)
                area2 += xu * yv - xv * yu
            fid = len(sc.faces)
            sc.faces.append(Face(cycle=cycle, comp=sc.comp_of[cycle[0][0]],
                                 positive=(area2 > 0), area=float(area2) / 2.0))
            for de in cycle:
                sc.face_of[de] = fid

    # one non-positive cycle per component is its outer boundary
    sc.comp_outer_cycle = [[] for _ in range(sc.n_components)]
    for f in sc.faces:
        if not f.positive:
            sc.comp_outer_cycle[f.comp] = f.cycle

    _nest_components(sc, fxy)


def _point_in_cycle(sc, fxy, cycle, px: Fraction, py: Fraction) -> bool:
    """Ray-cast parity of a point against a directed cycle (with multiplicity).

    The point must not lie on any cycle edge."""
    inside = False
    for (u, v) in cycle:
        xu, yu = fxy(u)
        xv, yv = fxy(v)
        if (yu > py) == (yv > py):
            continue
        # x of the crossing at height py
        t = (py - yu) / (yv - yu)
        x = xu + t * (xv - xu)
        if x > px:
            inside = not inside
    return inside


def _nest_components(sc: ShadowComplex, fxy) -> None:
    """Attach every component to the bounded face directly containing it."""
    sc.comp_parent_face = [None] * sc.n_components
    if sc.n_components <= 1:
        return
    anchors = {}
    for v in range(len(sc.verts)):
        c = sc.comp_of[v]
        key = _hy_key(sc.verts[v].h)
        if c not in anchors or key < anchors[c][0]:
            anchors[c] = (key, v)
    positive = [(i, f) for i, f in enumerate(sc.faces) if f.positive]
    for c in range(sc.n_components):
        _, av = anchors[c]
        px, py = fxy(av)
        best = None
        for fid, f in positive:
            if f.comp == c:
                continue
            if _point_in_cycle(sc, fxy, f.cycle, px, py):
                if best is None or abs(f.area) < abs(sc.faces[best].area):
                    best = fid
        if best is not None:
            sc.comp_parent_face[c] = best
            sc.faces[best].holes.append(c)


def _face_boundary(sc: ShadowComplex, f: Face):
    """Face cycle plus the outer cycles of its nested components."""
    edges = list(f.cycle)
    for c in f.holes:
        edges.extend(sc.comp_outer_cycle[c])
    return edges


def _representative_point(sc: ShadowComplex, f: Face, fxy):
    """An exact interior point of a bounded face, found by exact scanline."""
    boundary = _face_boundary(sc, f)
    ys = sorted({fxy(u)[1] for (u, _) in boundary})
    for y0, y1 in zip(ys, ys[1:]):
        ymid = (y0 + y1) / 2
        xs = []
        for (u, v) in boundary:
            xu, yu = fxy(u)
            xv, yv = fxy(v)
            if (yu > ymid) == (yv > ymid):
                continue
            t = (ymid - yu) / (yv - yu)
            xs.append(xu + t * (xv - xu))
        xs.sort()
        inside = False
        prev = None
        for x in xs:
            if inside and prev is not None and x > prev:
                return ((prev + x) / 2, ymid)
            prev = x
            inside = not inside
    return None


def _classify_faces(sc: ShadowComplex) -> None:
    frac_cache: dict[int, tuple[Fraction, Fraction]] = {}

    def fxy(v):
        f = frac_cache.get(v)
        if f is None:
            f = hpoint_to_fractions(sc.verts[v].h)
            frac_cache[v] = f
        return f

    # grid over triangle bounding boxes for point-location
    tri_grid: dict[tuple[int, int], list[int]] = {}
    cell = None
    if sc.tri_lattice:
        boxes = []
        for (a, b, c) in sc.tri_lattice:
            boxes.append((min(a[0], b[0], c[0]), min(a[1], b[1], c[1]),
                          max(a[0], b[0], c[0]), max(a[1], b[1], c[1])))
        sizes = [max(b[2] - b[0], b[3] - b[1]) for b in boxes]
        cell = max(float(np.median(sizes)), 1.0)
        for ti, b in enumerate(boxes):
            for cc in _grid_cells(b, cell):
                tri_grid.setdefault(cc, []).append(ti)

    for f in sc.faces:
        if not f.positive:
            continue
        rep = _representative_point(sc, f, fxy)
        if rep is None:
            continue
        rx, ry = rep
        f.rep = (float(rx) / snap_scale(sc.digits), float(ry) / snap_scale(sc.digits))
        ph = (rx.numerator * ry.denominator, ry.numerator * rx.denominator,
              rx.denominator * ry.denominator)
        f.rep_exact = ph
        if cell is None:
            continue
        cx = int(np.floor(float(rx) / cell))
        cy = int(np.floor(float(ry) / cell))
        for ti in tri_grid.get((cx, cy), ()):
            if point_in_triangle_lattice(ph, sc.tri_lattice[ti]) != EXTERIOR:
                f.covered = True
                break


def shadow_betti(sc: ShadowComplex) -> tuple[int, int]:
    return sc.betti()


# ---------------------------------------------------------------------------
# lifting condition
# ---------------------------------------------------------------------------

def check_lifting(K: FlagComplex, coords, digits: int = SNAP_DIGITS) -> LiftingReport:
    """Check the path-lifting condition at every transverse edge crossing.

    For a crossing pair of projected edges [AB] and [CD] the condition
    holds when either (A) some vertex E makes both {A,B,E} and {C,D,E}
    simplices, or (B) some adjacent pair (E,F) makes {A,E,F} and {C,D,E,F}
    simplices with the segment EF meeting AB.  Simplex membership is by
    vertex set, so coincidences with the four base vertices are allowed.
    """
    P = np.atleast_2d(np.asarray(coords, dtype=float))
    if P.shape[1] != 2:
        raise ValueError("the lifting check needs planar coordinates")
    s = snap_scale(digits)
    lat = [(round(float(x) * s), round(float(y) * s)) for x, y in P]
    segs = []
    seg_edge = []
    seen = set()
    for (i, j) in K.edges:
        a, b = lat[i], lat[j]
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        if key in seen:
            continue
        seen.add(key)
        segs.append(key)
        seg_edge.append((i, j))

    report = LiftingReport()

    def simplex(*verts) -> bool:
        vs = sorted(set(verts))
        return all(K.has_edge(vs[i], vs[j])
                   for i in range(len(vs)) for j in range(i + 1, len(vs)))

    for (si, sj, _) in transverse_crossing_pairs(segs):
        A, B = seg_edge[si]
        C, D = seg_edge[sj]
        report.examined += 1

        found_a = False
        cand = K.adj[A] & K.adj[B] & K.adj[C] & K.adj[D]
        if cand:
            found_a = True
        else:
            for E in (A, B, C, D):
                if simplex(A, B, E) and simplex(C, D, E):
                    found_a = True
                    break
        if found_a:
            report.satisfied_a += 1
            continue

        found_b = False
        cand_ef = (K.adj[C] & K.adj[D]) | (1 << C) | (1 << D)
        cand_list = []
        c = cand_ef
        while c:
            low = c & -c
            cand_list.append(low.bit_length() - 1)
            c ^= low
        a_lat, b_lat = segs[si]
        for x in range(len(cand_list)):
            E = cand_list[x]
            for y in range(len(cand_list)):
                if x == y:
                    continue
                F = cand_list[y]
                if not simplex(C, D, E, F):
                    continue
                if not simplex(A, E, F):
                    continue
                if lat[E] == lat[F]:
                    continue
                res = segment_intersect_lattice(lat[E], lat[F], a_lat, b_lat)
                if res.kind != "disjoint":
                    found_b = True
                    break
            if found_b:
                break
        if found_b:
            report.satisfied_b += 1
        else:
            report.violations.append(((A, B), (C, D)))
    return report


# ---------------------------------------------------------------------------
# Hausdorff distance between a shadow and a graph
# ---------------------------------------------------------------------------

def shadow_sample_points(sc: ShadowComplex, resolution: float) -> np.ndarray:
    """Point sample of the shadow: arrangement edges plus triangle interiors."""
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    pts = [np.asarray([v.xy for v in sc.verts], dtype=float)]
    for (a, b, _) in sc.edges:
        pa = np.asarray(sc.verts[a].xy)
        pb = np.asarray(sc.verts[b].xy)
        m = int(np.ceil(np.linalg.norm(pb - pa) / resolution))
        if m > 1:
            ts = np.arange(1, m) / m
            pts.append(pa + ts[:, None] * (pb - pa))
    if sc.points_float is not None:
        for (i, j, k) in sc.triangles:
            a = sc.points_float[i]
            b = sc.points_float[j]
            c = sc.points_float[k]
            m = int(np.ceil(max(np.linalg.norm(b - a), np.linalg.norm(c - a),
                                np.linalg.norm(c - b)) / resolution))
            if m < 2:
                continue
            grid = []
            for p in range(m + 1):
                for q in range(m + 1 - p):
                    grid.append((p / m, q / m))
            bary = np.asarray(grid)
            pts.append(a + bary[:, :1] * (b - a) + bary[:, 1:] * (c - a))
    return np.vstack(pts)


def shadow_hausdorff(sc: ShadowComplex, G, resolution: float) -> float:
    """Two-sided Hausdorff distance between the shadow and a graph.

    The shadow side is sampled on edges and triangle interiors at the given
    resolution; the graph-to-shadow direction uses a dense graph sample.
    The estimate errs by at most about the resolution.
    """
    from .sampling import sample_graph

    S = shadow_sample_points(sc, resolution)
    d_sh_to_g = np.full(len(S), np.inf)
    for a, b in G.segments():
        np.minimum(d_sh_to_g, point_segment_distance(S, a, b), out=d_sh_to_g)
    gref = sample_graph(G, resolution).points
    d_g_to_sh = cKDTree(S).query(gref)[0]
    return float(max(d_sh_to_g.max(), d_g_to_sh.max()))


# ---------------------------------------------------------------------------
# ear-clipping cross-check of the Euler characteristic
# ---------------------------------------------------------------------------

def _frac_orient(u, v, w) -> int:
    d = (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0])
    return (d > 0) - (d < 0)


def _frac_strictly_between(a, b, p) -> bool:
    """Collinear p strictly inside segment ab (Fraction coordinates)."""
    if _frac_orient(a, b, p) != 0:
        return False
    lo = (min(a[0], b[0]), min(a[1], b[1]))
    hi = (max(a[0], b[0]), max(a[1], b[1]))
    return (lo[0] <= p[0] <= hi[0] and lo[1] <= p[1] <= hi[1]
            and p != a and p != b)


def _blocks_visibility(p, q, a, b) -> bool:
    """Does the boundary edge pq block the open bridge segment ab?

    Polygon vertices never lie interior to arrangement edges, so only a
    proper crossing or a boundary endpoint inside ab can block."""
    o1, o2 = _frac_orient(a, b, p), _frac_orient(a, b, q)
    o3, o4 = _frac_orient(p, q, a), _frac_orient(p, q, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and _frac_strictly_between(a, b, p):
        return True
    if o2 == 0 and _frac_strictly_between(a, b, q):
        return True
    return False


def _bridge_holes(sc, outer, hole_walks, fxy):
    """Connect hole walks (vertex id lists; a singleton is an isolated
    vertex) to the outer walk with doubled bridge edges, choosing mutually
    visible bridge endpoints."""
    poly = [u for (u, _) in outer]
    boundary = [(fxy(u), fxy(v)) for (u, v) in outer]
    for hv in hole_walks:
        if len(hv) > 1:
            boundary += [(fxy(hv[k]), fxy(hv[(k + 1) % len(hv)]))
                         for k in range(len(hv))]
    # rightmost holes first, so bridges toward the outer walk stay clear
    hole_walks = sorted(hole_walks, key=lambda h: max(fxy(u) for u in h),
                        reverse=True)
    for hv in hole_walks:
        mi = max(range(len(hv)), key=lambda k: fxy(hv[k]))
        M = hv[mi]
        pm = fxy(M)
        best = None
        for idx, u in enumerate(poly):
            pu = fxy(u)
            if pu == pm:
                continue
            if any(_blocks_visibility(p, q, pm, pu) for (p, q) in boundary
                   if pm not in (p, q) and pu not in (p, q)):
                continue
            d2 = float((pu[0] - pm[0]) ** 2 + (pu[1] - pm[1]) ** 2)
            if best is None or d2 < best[0]:
                best = (d2, idx)
        if best is None:
            raise ValueError("no visible bridge target for a face hole")
        idx = best[1]
        if len(hv) == 1:
            poly = poly[:idx + 1] + [M] + poly[idx:]
        else:
            poly = poly[:idx + 1] + [M] + hv[mi + 1:] + hv[:mi + 1] + poly[idx:]
        boundary.append((fxy(poly[idx]), pm))
    return poly


def _ear_clip(poly, fxy):
    """Triangulate a weakly simple CCW polygon given as vertex ids.

    Doubled walks (antennas, bridges) stay in the polygon: zero-area
    triples are never clipped, ears around them consume the walk."""
    poly = list(poly)
    tris = []
    guard = 0
    limit = 20 * max(len(poly), 1)
    while len(poly) > 3 and guard < limit:
        guard += 1
        m = len(poly)
        clipped = False
        for i in range(m):
            a, b, c = poly[(i - 1) % m], poly[i], poly[(i + 1) % m]
            pa, pb, pc = fxy(a), fxy(b), fxy(c)
            cross = ((pb[0] - pa[0]) * (pc[1] - pa[1])
                     - (pb[1] - pa[1]) * (pc[0] - pa[0]))
            if cross <= 0:
                continue
            ok = True
            for v in poly:
                pv = fxy(v)
                if pv in (pa, pb, pc):
                    continue
                if _frac_in_triangle(pv, pa, pb, pc):
                    ok = False
                    break
            if not ok:
                continue
            tris.append((a, b, c))
            del poly[i]
            clipped = True
            break
        if not clipped:
            raise ValueError("ear clipping failed on a face polygon")
    if len(poly) == 3:
        pa, pb, pc = (fxy(v) for v in poly)
        if _frac_orient(pa, pb, pc) > 0:
            tris.append(tuple(poly))
        elif _frac_orient(pa, pb, pc) < 0:
            raise ValueError("ear clipping left a clockwise triangle")
    return tris


def _frac_in_triangle(p, a, b, c) -> bool:
    """Closed containment with Fraction coordinates."""
    def orient(u, v, w):
        d = (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0])
        return (d > 0) - (d < 0)

    o = orient(a, b, c)
    if o == 0:
        return False
    s1, s2, s3 = orient(a, b, p), orient(b, c, p), orient(c, a, p)
    if o < 0:
        s1, s2, s3 = -s1, -s2, -s3
    return s1 >= 0 and s2 >= 0 and s3 >= 0


def triangulation_euler_check(sc: ShadowComplex) -> tuple[int, int]:
    """Euler characteristic recomputed from an explicit per-face ear-clipping
    triangulation of the covered faces.  Returns (chi_arrangement, chi_tri)."""
    frac_cache: dict[int, tuple[Fraction, Fraction]] = {}

    def fxy(v):
        f = frac_cache.get(v)
        if f is None:
            f = hpoint_to_fractions(sc.verts[v].h)
            frac_cache[v] = f
        return f

    comp_vertices: dict[int, int] = {}
    for v in range(len(sc.verts)):
        comp_vertices.setdefault(sc.comp_of[v], v)
    n_tris = 0
    new_edges = set()
    arr_edges = {(min(a, b), max(a, b)) for (a, b, _) in sc.edges}
    for f in sc.covered_faces():
        holes = []
        for c in f.holes:
            cyc = sc.comp_outer_cycle[c]
            holes.append([u for (u, _) in cyc] if cyc else [comp_vertices[c]])
        poly = (_bridge_holes(sc, f.cycle, holes, fxy) if holes
                else [u for (u, _) in f.cycle])
        tris = _ear_clip(poly, fxy)
        n_tris += len(tris)
        for (a, b, c) in tris:
            for (u, v) in ((a, b), (b, c), (a, c)):
                key = (min(u, v), max(u, v))
                if key not in arr_edges and u != v:
                    new_edges.add(key)
    chi_tri = sc.n_vertices - (sc.n_edges + len(new_edges)) + n_tris
    return sc.euler_characteristic(), chi_tri


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

_SVG_COLORS = {
    "face": "#cfe0f5",
    "edge": "#5b6b86",
    "crossing": "#d93636",
    "original": "#3a5fa8",
    "graph": "#1f4fd0",
    "cloud": "#333333",
    "skeleton": "#8a2fbf",
}


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def render_svg(sc: ShadowComplex, overlays: dict | None = None,
               size: int = 640) -> str:
    """Deterministic SVG picture of the shadow: identical inputs give
    byte-identical output.  Optional overlays: graph, cloud, skeleton."""
    overlays = overlays or {}
    x0, y0, x1, y1 = sc.bbox()
    for key in ("graph", "cloud"):
        obj = overlays.get(key)
        if obj is not None:
            pts = obj.points if hasattr(obj, "points") else np.vstack(
                [e.polyline for e in obj.edges.values()]) if hasattr(obj, "edges") else None
            if pts is not None and len(pts):
                x0 = min(x0, float(np.min(pts[:, 0])))
                y0 = min(y0, float(np.min(pts[:, 1])))
                x1 = max(x1, float(np.max(pts[:, 0])))
                y1 = max(y1, float(np.max(pts[:, 1])))
    w = max(x1 - x0, 1e-9)
    h = max(y1 - y0, 1e-9)
    pad = 0.05 * max(w, h)
    vb = f"{_fmt(x0 - pad)} {_fmt(-(y1 + pad))} {_fmt(w + 2 * pad)} {_fmt(h + 2 * pad)}"
    stroke = max(w, h) / 400.0
    dot = 1.6 * stroke

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="{vb}">',
    ]
    # y axis flipped so the picture matches mathematical orientation
    lines.append('<g id="faces" transform="scale(1,-1)">')
    for f in sc.covered_faces():
        parts = []
        cycles = [f.cycle] + [sc.comp_outer_cycle[c] for c in f.holes]
        for cyc in cycles:
            coords = [sc.verts[u].xy for (u, _) in cyc]
            d = "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in coords) + " Z"
            parts.append(d)
        lines.append(f'<path d="{" ".join(parts)}" fill="{_SVG_COLORS["face"]}" '
                     f'fill-rule="evenodd" stroke="none"/>')
    lines.append('</g>')
    lines.append(f'<g id="edges" transform="scale(1,-1)" '
                 f'stroke="{_SVG_COLORS["edge"]}" stroke-width="{_fmt(stroke)}" '
                 f'stroke-linecap="round">')
    for (a, b, _) in sc.edges:
        xa, ya = sc.verts[a].xy
        xb, yb = sc.verts[b].xy
        lines.append(f'<line x1="{_fmt(xa)}" y1="{_fmt(ya)}" '
                     f'x2="{_fmt(xb)}" y2="{_fmt(yb)}"/>')
    lines.append('</g>')

    graph = overlays.get("graph")
    lines.append('<g id="graph" transform="scale(1,-1)" fill="none" '
                 f'stroke="{_SVG_COLORS["graph"]}" stroke-width="{_fmt(1.2 * stroke)}">')
    if graph is not None:
        for e in graph.edges.values():
            d = "M " + " L ".join(f"{_fmt(p[0])} {_fmt(p[1])}" for p in e.polyline)
            lines.append(f'<path d="{d}"/>')
    lines.append('</g>')

    cloud = overlays.get("cloud")
    lines.append(f'<g id="cloud" transform="scale(1,-1)" fill="{_SVG_COLORS["cloud"]}">')
    if cloud is not None:
        for p in cloud.points:
            lines.append(f'<circle cx="{_fmt(p[0])}" cy="{_fmt(p[1])}" r="{_fmt(dot)}"/>')
    lines.append('</g>')

    skel = overlays.get("skeleton")
    lines.append('<g id="skeleton" transform="scale(1,-1)" fill="none" '
                 f'stroke="{_SVG_COLORS["skeleton"]}" stroke-width="{_fmt(1.2 * stroke)}">')
    if skel is not None:
        for (a, b) in skel.edges:
            pa, pb = skel.nodes[a], skel.nodes[b]
            lines.append(f'<line x1="{_fmt(pa[0])}" y1="{_fmt(pa[1])}" '
                         f'x2="{_fmt(pb[0])}" y2="{_fmt(pb[1])}"/>')
    lines.append('</g>')

    lines.append(f'<g id="vertices" transform="scale(1,-1)">')
    for v in sc.verts:
        color = _SVG_COLORS["crossing"] if v.tag == CROSSING else _SVG_COLORS["original"]
        r = dot if v.tag == CROSSING else 0.7 * dot
        lines.append(f'<circle cx="{_fmt(v.xy[0])}" cy="{_fmt(v.xy[1])}" '
                     f'r="{_fmt(r)}" fill="{color}"/>')
    lines.append('</g>')
    lines.append('</svg>')
    return "\n".join(lines) + "\n"
