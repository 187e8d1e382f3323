"""Flag complexes at a scale under an arbitrary finite metric, and their
Betti numbers over GF(2).

A subset is a simplex exactly when all its pairs sit at distance strictly
below the scale, so the complex is the clique complex of the neighbor graph
truncated at ``max_dim``.  Boundary ranks are computed by column reduction
with bitset columns (python ints), which is fast for the tube-like
complexes this package produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

EUCLIDEAN = "euclidean"
EPS_PATH = "eps-path"


@dataclass
class FlagComplex:
    n: int
    beta: float
    max_dim: int
    metric_tag: str = EUCLIDEAN
    simplices: dict[int, list[tuple]] = field(default_factory=dict)
    adj: list[int] = field(default_factory=list)   # neighbor bitsets

    def count(self, dim: int) -> int:
        return len(self.simplices.get(dim, []))

    @property
    def vertices(self):
        return self.simplices.get(0, [])

    @property
    def edges(self):
        return self.simplices.get(1, [])

    @property
    def triangles(self):
        return self.simplices.get(2, [])

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and bool(self.adj[i] >> j & 1)

    def is_simplex(self, verts) -> bool:
        """Set semantics: all pairs among the distinct vertices are edges."""
        vs = sorted(set(verts))
        return all(self.has_edge(vs[i], vs[j])
                   for i in range(len(vs)) for j in range(i + 1, len(vs)))

    # ---- dump format: one simplex per line, 's v0 v1 ... vk' --------------

    def dump(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(f"# n={self.n} beta={self.beta!r} max_dim={self.max_dim} "
                     f"metric={self.metric_tag}\n")
            for dim in sorted(self.simplices):
                for s in self.simplices[dim]:
                    fh.write("s " + " ".join(str(v) for v in s) + "\n")

    @classmethod
    def load(cls, path) -> "FlagComplex":
        simplices: dict[int, list[tuple]] = {}
        meta = {}
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    for tok in line[1:].split():
                        if "=" in tok:
                            k, v = tok.split("=", 1)
                            meta[k] = v
                    continue
                tok = line.split()
                if tok[0] != "s":
                    raise ValueError(f"{path}:{lineno}: unknown record {tok[0]!r}")
                try:
                    verts = tuple(sorted(int(v) for v in tok[1:]))
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: {exc}") from exc
                if len(set(verts)) != len(verts) or not verts:
                    raise ValueError(f"{path}:{lineno}: bad simplex {verts}")
                simplices.setdefault(len(verts) - 1, []).append(verts)
        n = int(meta.get("n", max((v for s in simplices.get(0, ()) for v in s),
                                  default=-1) + 1))
        max_dim = int(meta.get("max_dim", max(simplices, default=0)))
        K = cls(n=n, beta=float(meta.get("beta", 0.0)), max_dim=max_dim,
                metric_tag=meta.get("metric", EUCLIDEAN), simplices=simplices)
        K.adj = [0] * n
        for (i, j) in simplices.get(1, ()):
            K.adj[i] |= 1 << j
            K.adj[j] |= 1 << i
        for dim in sorted(simplices):
            if dim == 0:
                continue
            for s in simplices[dim]:
                if not K.is_simplex(s):
                    raise ValueError(f"{path}: simplex {s} violates the flag "
                                     "property (missing edge)")
        return K


def rips(dist_matrix, beta: float, max_dim: int = 2,
         metric_tag: str = EUCLIDEAN) -> FlagComplex:
    """Clique complex of the strict beta-neighbor graph of a finite metric.

    ``dist_matrix`` is a symmetric (n, n) array with zero diagonal; +inf
    entries mark unreachable pairs and never become edges.
    """
    if beta <= 0:
        raise ValueError("scale beta must be positive")
    if max_dim not in (1, 2, 3):
        raise ValueError("max_dim must be 1, 2 or 3")
    D = np.asarray(dist_matrix, dtype=float)
    n = D.shape[0]
    K = FlagComplex(n=n, beta=float(beta), max_dim=max_dim, metric_tag=metric_tag)
    K.simplices[0] = [(i,) for i in range(n)]

    mask = D < beta
    np.fill_diagonal(mask, False)
    adj = [0] * n
    for i in range(n):
        bits = 0
        for j in np.nonzero(mask[i])[0]:
            bits |= 1 << int(j)
        adj[i] = bits
    K.adj = adj

    edges = [(int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(mask, k=1)))]
    K.simplices[1] = edges
    if max_dim >= 2:
        tris = []
        for (i, j) in edges:
            c = (adj[i] & adj[j]) >> (j + 1)  # common neighbors strictly above j
            k = j + 1
            while c:
                low = c & -c
                step = low.bit_length() - 1
                k += step
                tris.append((i, j, k))
                c >>= step + 1
                k += 1
        K.simplices[2] = tris
    if max_dim >= 3:
        tets = []
        for (i, j, k) in K.simplices[2]:
            c = adj[i] & adj[j] & adj[k]
            c >>= k + 1
            m = k + 1
            while c:
                low = c & -c
                step = low.bit_length() - 1
                m += step
                tets.append((i, j, k, m))
                c >>= step + 1
                m += 1
        K.simplices[3] = tets
    return K


def euler_characteristic(K: FlagComplex) -> int:
    return sum((-1) ** dim * len(s) for dim, s in K.simplices.items())


def _rank_gf2(columns) -> int:
    """GF(2) rank of a list of bitset columns via pivot reduction."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            p = col.bit_length() - 1
            other = pivots.get(p)
            if other is None:
                pivots[p] = col
                rank += 1
                break
            col ^= other
    return rank


def _component_count(n: int, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j) in edges:
        a, b = find(i), find(j)
        if a != b:
            parent[a] = b
    return len({find(i) for i in range(n)})


def betti(K: FlagComplex, up_to: int = 1):
    """Betti numbers (b0, ..., b_up_to) over GF(2).

    Requires simplices enumerated through dimension up_to + 1.
    """
    if K.max_dim < up_to + 1:
        # dimension up_to+1 was never enumerated, ranks would silently be wrong
        raise ValueError(f"betti up to {up_to} needs simplices of dimension "
                         f"{up_to + 1}; complex was built with max_dim={K.max_dim}")
    n = K.n
    edges = K.simplices.get(1, [])
    b0 = _component_count(n, edges)
    out = [b0]
    if up_to >= 1:
        eindex = {e: i for i, e in enumerate(edges)}
        cols2 = []
        for (i, j, k) in K.simplices.get(2, ()):
            cols2.append((1 << eindex[(i, j)]) | (1 << eindex[(i, k)])
                         | (1 << eindex[(j, k)]))
        rank2 = _rank_gf2(cols2)
        b1 = len(edges) - n + b0 - rank2
        out.append(b1)
    if up_to >= 2:
        tris = K.simplices.get(2, [])
        tindex = {t: i for i, t in enumerate(tris)}
        cols3 = []
        for (i, j, k, m) in K.simplices.get(3, ()):
            cols3.append((1 << tindex[(i, j, k)]) | (1 << tindex[(i, j, m)])
                         | (1 << tindex[(i, k, m)]) | (1 << tindex[(j, k, m)]))
        rank3 = _rank_gf2(cols3)
        b2 = len(tris) - rank2 - rank3
        out.append(b2)
    return tuple(out)


def euclidean_distance_matrix(points) -> np.ndarray:
    P = np.atleast_2d(np.asarray(points, dtype=float))
    diff = P[:, None, :] - P[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))
