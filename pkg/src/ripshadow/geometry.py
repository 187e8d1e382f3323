"""Exact-leaning planar primitives shared by every other module.

All sign decisions (orientation, segment intersection, point-in-triangle)
snap their inputs to a fixed decimal grid and are then evaluated in integer
arithmetic, so arrangement topology downstream can never flip because of
floating-point rounding.  Twelve digits is the default grid; callers that
need a coarser or finer snap pass ``digits`` explicitly.

Intersection points of snapped segments are rational.  They are kept in
homogeneous integer form ``(xn, yn, w)`` with ``w > 0`` so that repeated
predicates on them stay exact without Fraction normalisation costs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np
from scipy.spatial import cKDTree

SNAP_DIGITS = 12

CCW = 1
COLLINEAR = 0
CW = -1


def snap_scale(digits: int = SNAP_DIGITS) -> int:
    return 10 ** digits


def snap_point(p, digits: int = SNAP_DIGITS) -> tuple[int, int]:
    """Snap a 2D point to the integer lattice at the given decimal precision."""
    s = snap_scale(digits)
    return (round(float(p[0]) * s), round(float(p[1]) * s))


def snap_points(points, digits: int = SNAP_DIGITS) -> list[tuple[int, int]]:
    return [snap_point(p, digits) for p in points]


def lattice_to_float(p, digits: int = SNAP_DIGITS) -> tuple[float, float]:
    s = snap_scale(digits)
    return (p[0] / s, p[1] / s)


# ---------------------------------------------------------------------------
# homogeneous integer points: (xn, yn, w), w > 0, affine point (xn/w, yn/w)
# ---------------------------------------------------------------------------

def hpoint(x: int, y: int) -> tuple[int, int, int]:
    return (x, y, 1)


def hpoint_to_float(p) -> tuple[float, float]:
    return (p[0] / p[2], p[1] / p[2])


def hpoint_to_fractions(p) -> tuple[Fraction, Fraction]:
    return (Fraction(p[0], p[2]), Fraction(p[1], p[2]))


def hpoint_normalize(p) -> tuple[int, int, int]:
    """Canonical form (gcd 1, positive w) so equal points compare equal."""
    xn, yn, w = p
    if w < 0:
        xn, yn, w = -xn, -yn, -w
    g = gcd(gcd(abs(xn), abs(yn)), w)
    if g > 1:
        xn, yn, w = xn // g, yn // g, w // g
    return (xn, yn, w)


def orient_h(p, q, r) -> int:
    """Orientation sign of three homogeneous points with positive weights."""
    det = (p[0] * (q[1] * r[2] - r[1] * q[2])
           - p[1] * (q[0] * r[2] - r[0] * q[2])
           + p[2] * (q[0] * r[1] - r[0] * q[1]))
    if det > 0:
        return CCW
    if det < 0:
        return CW
    return COLLINEAR


def _orient_int(a, b, c) -> int:
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if det > 0:
        return CCW
    if det < 0:
        return CW
    return COLLINEAR


def orientation(p, q, r, digits: int = SNAP_DIGITS) -> int:
    """Orientation of the 2D triple (p, q, r): CCW, CW or COLLINEAR.

    Exact on the snapped inputs (sign of the doubled signed area).
    """
    for pt in (p, q, r):
        if len(pt) != 2:
            raise ValueError("orientation is defined for 2D points only")
    return _orient_int(snap_point(p, digits), snap_point(q, digits),
                       snap_point(r, digits))


# ---------------------------------------------------------------------------
# segment intersection
# ---------------------------------------------------------------------------

DISJOINT = "disjoint"
TRANSVERSE = "transverse_point"
SHARED_ENDPOINT = "shared_endpoint"
COLLINEAR_OVERLAP = "collinear_overlap"


@dataclass(frozen=True)
class SegmentIntersection:
    """Classification of how two snapped segments meet.

    ``transverse_point`` means the witness lies strictly inside both
    segments.  Single-point contacts involving an endpoint of at least one
    segment (shared endpoints and T-junctions alike) are tagged
    ``shared_endpoint``: they produce no transverse shadow vertex.
    Exact fields are expressed on the snap lattice.
    """

    kind: str
    point: tuple[float, float] | None = None
    point_exact: tuple[int, int, int] | None = None
    overlap: tuple[tuple[float, float], tuple[float, float]] | None = None
    overlap_exact: tuple[tuple[int, int], tuple[int, int]] | None = None


def _between_collinear(a, b, p) -> bool:
    """p on the closed segment ab, all collinear lattice points."""
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segment_intersect_lattice(a, b, c, d) -> SegmentIntersection:
    """Exact classification for lattice segments ab and cd."""
    if a == b or c == d:
        raise ValueError("degenerate (zero-length) segment")

    d1 = _orient_int(c, d, a)
    d2 = _orient_int(c, d, b)
    d3 = _orient_int(a, b, c)
    d4 = _orient_int(a, b, d)

    if d1 * d2 < 0 and d3 * d4 < 0:
        # proper crossing: a + t*(b-a) with t = num/den, 0 < t < 1
        rx, ry = b[0] - a[0], b[1] - a[1]
        sx, sy = d[0] - c[0], d[1] - c[1]
        den = rx * sy - ry * sx
        num = (c[0] - a[0]) * sy - (c[1] - a[1]) * sx
        if den < 0:
            den, num = -den, -num
        pe = hpoint_normalize((a[0] * den + num * rx, a[1] * den + num * ry, den))
        return SegmentIntersection(TRANSVERSE, point=hpoint_to_float(pe),
                                   point_exact=pe)

    if d1 == 0 and d2 == 0:
        # all four points collinear: 1D overlap analysis
        contacts = [p for p in (c, d) if _between_collinear(a, b, p)]
        contacts += [p for p in (a, b) if _between_collinear(c, d, p)]
        if not contacts:
            return SegmentIntersection(DISJOINT)
        lo = min(contacts)
        hi = max(contacts)
        if lo == hi:
            return SegmentIntersection(SHARED_ENDPOINT, point=(float(lo[0]), float(lo[1])),
                                       point_exact=hpoint(*lo))
        return SegmentIntersection(
            COLLINEAR_OVERLAP,
            overlap=((float(lo[0]), float(lo[1])), (float(hi[0]), float(hi[1]))),
            overlap_exact=(lo, hi))

    touch = None
    if d1 == 0 and _between_collinear(c, d, a):
        touch = a
    elif d2 == 0 and _between_collinear(c, d, b):
        touch = b
    elif d3 == 0 and _between_collinear(a, b, c):
        touch = c
    elif d4 == 0 and _between_collinear(a, b, d):
        touch = d
    if touch is not None:
        return SegmentIntersection(SHARED_ENDPOINT,
                                   point=(float(touch[0]), float(touch[1])),
                                   point_exact=hpoint(*touch))
    return SegmentIntersection(DISJOINT)


def segment_intersect(s1, s2, digits: int = SNAP_DIGITS) -> SegmentIntersection:
    """Classify the intersection of two 2D segments given as ((p, q), (r, s)).

    Float fields are in input units; exact fields live on the snap lattice.
    """
    (p1, q1), (p2, q2) = s1, s2
    a, b = snap_point(p1, digits), snap_point(q1, digits)
    c, d = snap_point(p2, digits), snap_point(q2, digits)
    res = segment_intersect_lattice(a, b, c, d)
    s = snap_scale(digits)
    if res.point_exact is not None:
        xe, ye, w = res.point_exact
        pt = (xe / (w * s), ye / (w * s))
        return SegmentIntersection(res.kind, point=pt, point_exact=res.point_exact)
    if res.overlap_exact is not None:
        lo, hi = res.overlap_exact
        return SegmentIntersection(res.kind,
                                   overlap=((lo[0] / s, lo[1] / s),
                                            (hi[0] / s, hi[1] / s)),
                                   overlap_exact=res.overlap_exact)
    return res


# ---------------------------------------------------------------------------
# point in triangle
# ---------------------------------------------------------------------------

INTERIOR = "interior"
BOUNDARY = "boundary"
EXTERIOR = "exterior"


def point_in_triangle_lattice(p, tri) -> str:
    """Closed-hull membership for a homogeneous point against a lattice triangle."""
    a, b, c = (hpoint(*t) for t in tri)
    if len(p) == 2:
        p = hpoint(*p)
    o = orient_h(a, b, c)
    if o == COLLINEAR:
        # degenerate triangle: membership in the covering segment
        pts = sorted(tri)
        lo, hi = pts[0], pts[-1]
        if lo == hi:
            return BOUNDARY if hpoint_normalize(p) == hpoint_normalize(hpoint(*lo)) else EXTERIOR
        if orient_h(hpoint(*lo), hpoint(*hi), p) != COLLINEAR:
            return EXTERIOR
        w = p[2]
        inside = (min(lo[0], hi[0]) * w <= p[0] <= max(lo[0], hi[0]) * w
                  and min(lo[1], hi[1]) * w <= p[1] <= max(lo[1], hi[1]) * w)
        return BOUNDARY if inside else EXTERIOR
    s1 = orient_h(a, b, p)
    s2 = orient_h(b, c, p)
    s3 = orient_h(c, a, p)
    if o == CW:
        s1, s2, s3 = -s1, -s2, -s3
    if s1 < 0 or s2 < 0 or s3 < 0:
        return EXTERIOR
    if s1 == 0 or s2 == 0 or s3 == 0:
        return BOUNDARY
    return INTERIOR


def point_in_triangle(p, tri, digits: int = SNAP_DIGITS) -> str:
    """Locate a 2D point against a closed triangle: interior, boundary or exterior."""
    pl = snap_point(p, digits)
    tl = tuple(snap_point(t, digits) for t in tri)
    return point_in_triangle_lattice(pl, tl)


# ---------------------------------------------------------------------------
# Hausdorff distance between finite point sets
# ---------------------------------------------------------------------------

def hausdorff_distance(A, B) -> float:
    """Symmetric Hausdorff distance between two non-empty finite point sets."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.size == 0 or B.size == 0:
        raise ValueError("hausdorff_distance requires non-empty sets")
    d_ab = cKDTree(B).query(A)[0].max()
    d_ba = cKDTree(A).query(B)[0].max()
    return float(max(d_ab, d_ba))


def directed_hausdorff(A, B) -> float:
    """sup over a in A of the distance from a to the finite set B."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.size == 0 or B.size == 0:
        raise ValueError("directed_hausdorff requires non-empty sets")
    return float(cKDTree(B).query(A)[0].max())


def point_segment_distance(points, a, b) -> np.ndarray:
    """Euclidean distances from an array of points to the closed segment ab."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return np.linalg.norm(P - a, axis=1)
    t = np.clip((P - a) @ ab / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    return np.linalg.norm(P - proj, axis=1)
