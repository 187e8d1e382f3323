"""The hop-bounded path metric over a point cloud.

Two points are neighbors when their Euclidean distance is strictly below
the hop radius eps; the metric is the weighted shortest-path distance in
that neighbor graph, +inf when no hop path exists.  Borderline pairs (within
float noise of the threshold) are resolved exactly on the snap lattice, so
the neighbor graph is a deterministic function of the snapped input.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, dijkstra
from scipy.spatial.distance import pdist, squareform

from .geometry import SNAP_DIGITS, snap_scale

_BORDER_REL = 1e-9


class EpsMetricIndex:
    """Neighbor graph of a cloud at hop radius eps, plus cached distances.

    Immutable after construction; per-source queries are independent.
    """

    def __init__(self, points, eps: float, digits: int = SNAP_DIGITS):
        if eps <= 0:
            raise ValueError("hop radius eps must be positive")
        P = np.atleast_2d(np.asarray(points, dtype=float))
        self.points = P
        self.eps = float(eps)
        self.digits = digits
        n = len(P)
        self.n = n

        D = squareform(pdist(P)) if n > 1 else np.zeros((1, 1))
        mask = D < eps
        border = np.abs(D - eps) <= _BORDER_REL * max(1.0, eps)
        if border.any():
            s = snap_scale(digits)
            L = np.rint(P * s).astype(object)
            e2 = round(eps * s) ** 2
            for i, j in zip(*np.nonzero(np.triu(border, k=1))):
                diff = L[i] - L[j]
                exact = sum(int(d) * int(d) for d in diff) < e2
                mask[i, j] = mask[j, i] = exact
        np.fill_diagonal(mask, False)
        self._mask = mask

        rows, cols = np.nonzero(mask)
        self._adj = csr_matrix((D[rows, cols], (rows, cols)), shape=(n, n))
        self.n_components, self._labels = connected_components(self._adj,
                                                               directed=False)
        self.connected = self.n_components <= 1
        self._row_cache: dict[int, np.ndarray] = {}
        self._all: np.ndarray | None = None

    # ---- queries ----------------------------------------------------------

    def d_from(self, i: int) -> np.ndarray:
        """Distances from source i to every point (+inf where unreachable)."""
        if self._all is not None:
            return self._all[i]
        row = self._row_cache.get(i)
        if row is None:
            row = dijkstra(self._adj, directed=False, indices=i)
            self._row_cache[i] = row
        return row

    def d(self, i: int, j: int) -> float:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError("point index out of range")
        if i == j:
            return 0.0
        return float(self.d_from(i)[j])

    def all_pairs(self) -> np.ndarray:
        if self._all is None:
            self._all = dijkstra(self._adj, directed=False)
            np.fill_diagonal(self._all, 0.0)
        return self._all

    def diam(self, subset) -> float:
        """Maximum pairwise distance over a non-empty index subset."""
        idx = list(subset)
        if not idx:
            raise ValueError("diam of an empty subset")
        if len(idx) == 1:
            return 0.0
        best = 0.0
        for k, i in enumerate(idx):
            row = self.d_from(i)
            for j in idx[k + 1:]:
                best = max(best, row[j])
        return float(best)

    def edge_count(self) -> int:
        return int(self._mask.sum()) // 2

    def neighbors(self, i: int) -> np.ndarray:
        return np.nonzero(self._mask[i])[0]

    # ---- distance-matrix dump: CSV with 'inf' tokens ----------------------

    def dump_matrix(self, path) -> None:
        M = self.all_pairs()
        with open(path, "w") as fh:
            fh.write(f"# n={self.n} eps={self.eps!r}\n")
            for row in M:
                fh.write(",".join("inf" if math.isinf(v) else repr(float(v))
                                  for v in row) + "\n")


def load_matrix(path) -> np.ndarray:
    rows = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([math.inf if tok.strip() == "inf" else float(tok)
                             for tok in line.split(",")])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
    M = np.asarray(rows, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{path}: matrix is not square")
    return M


def build(cloud, eps: float, digits: int = SNAP_DIGITS) -> EpsMetricIndex:
    """Build the hop-radius-eps neighbor index over a cloud or point array."""
    pts = getattr(cloud, "points", cloud)
    return EpsMetricIndex(pts, eps, digits=digits)


def d_eps(index: EpsMetricIndex, i: int, j: int) -> float:
    return index.d(i, j)


def diam_eps(index: EpsMetricIndex, subset) -> float:
    return index.diam(subset)
