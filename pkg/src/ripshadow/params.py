"""Quantitative reconstruction parameters: distortion estimation,
chord-proximity radius certification, and scale selection.

The hop-metric distortion of a graph is estimated on a dense self-sample:
every hop path through graph points stays inside the Euclidean thickening,
so the sampled ratio intrinsic/hop-metric is a lower bound of the true
supremum restricted to sampled pairs.  That one-sidedness is recorded on
every estimate.

The chord-proximity property certified here, for a radius r: whenever two
graph points a, b satisfy |a-b| <= r and a third graph point q lies within
e <= (1/2)(1-T)^{3/2} r of the segment ab (T the vertex angle constant),
then min(d(a,q), d(b,q)) <= (1+T)/2 d(a,b) + e/(1-T).  Certification is
resolution-bounded: the scan runs on a spacing-h sample of the graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graphs import (GEOMETRIC, HOMOTOPY, EmbeddedGraph, GraphMetric,
                     length_metric, systole, vertex_angle_constant)
from .pathmetric import EpsMetricIndex
from .sampling import sample_graph

ONE_SIDED_TAG = "lower-bound-of-sup-over-sampled-pairs"


@dataclass
class DistortionEstimate:
    eps: float
    radius: float
    value: float
    density: float
    n_sample: int
    one_sided: str = ONE_SIDED_TAG


@dataclass
class ShadowRadiusCertificate:
    r: float
    certified: bool
    resolution: float
    counterexample: tuple | None = None    # (i, j, q, eps_q) sample indices


@dataclass
class ParameterPlan:
    mode: str
    xi: float
    beta: float
    eps: float
    systole: float
    theta: float | None = None
    delta_lb: float | None = None
    distortion: DistortionEstimate | None = None
    beta_cap: float = math.inf
    eps_cap: float = math.inf
    notes: list[str] = field(default_factory=list)

    @property
    def distortion_bound(self) -> float:
        return (1 + 2 * self.xi) / (1 + self.xi)

    @property
    def required_dh(self) -> float:
        return 0.5 * self.xi * self.eps

    @property
    def shadow_bound(self) -> float | None:
        if self.mode != GEOMETRIC:
            return None
        return self.beta + 0.5 * self.xi * self.eps

    def validate(self) -> None:
        """Every constraint promised by the plan, checked before return."""
        if self.mode == HOMOTOPY:
            assert 0 < self.xi < 0.25
            assert self.beta < self.systole / 4
        else:
            assert self.theta is not None and self.delta_lb is not None
            assert 0 < self.xi < (1 - self.theta) / 6
            assert self.beta < min(self.delta_lb, self.systole / 18)
        assert 0 < self.eps <= self.eps_cap
        assert self.beta <= self.beta_cap
        if self.distortion is not None:
            assert self.distortion.value <= self.distortion_bound + 1e-12

    def to_keyvalues(self) -> list[tuple[str, str]]:
        kv = [("mode", self.mode),
              ("xi", f"{self.xi:.12g}"),
              ("beta", f"{self.beta:.12g}"),
              ("eps", f"{self.eps:.12g}"),
              ("systole", f"{self.systole:.12g}"),
              ("beta_cap", f"{self.beta_cap:.12g}"),
              ("eps_cap", f"{self.eps_cap:.12g}"),
              ("distortion_bound", f"{self.distortion_bound:.12g}"),
              ("required_dh", f"{self.required_dh:.12g}")]
        if self.theta is not None:
            kv.append(("theta", f"{self.theta:.12g}"))
        if self.delta_lb is not None:
            kv.append(("delta_lb", f"{self.delta_lb:.12g}"))
        if self.distortion is not None:
            kv.append(("distortion_estimate", f"{self.distortion.value:.12g}"))
            kv.append(("distortion_one_sided", self.distortion.one_sided))
        if self.shadow_bound is not None:
            kv.append(("shadow_bound", f"{self.shadow_bound:.12g}"))
        # the homotopy-mode constraint set implied by the plan, for reference
        kv.append(("homotopy_beta_cap", f"{self.systole / 4:.12g}"))
        kv.append(("homotopy_eps_cap", f"{self.beta / 3:.12g}"))
        for note in self.notes:
            kv.append(("note", note))
        return kv

    def to_text(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in self.to_keyvalues())


# ---------------------------------------------------------------------------
# distortion estimation on a dense self-sample
# ---------------------------------------------------------------------------

class DistortionScanner:
    """Reusable dense self-sample of a graph for repeated estimates.

    Building the sample and its intrinsic distance matrix once makes the
    halving loop in ``select_parameters`` cheap.
    """

    def __init__(self, G: EmbeddedGraph, density: float,
                 metric: GraphMetric | None = None):
        if density <= 0:
            raise ValueError("sample density must be positive")
        self.graph = G
        self.density = density
        self.cloud = sample_graph(G, density)
        self.metric = metric if metric is not None else length_metric(G)
        self.d_graph = self.metric.distance_matrix(self.cloud.graph_points)
        self._index_cache: dict[float, EpsMetricIndex] = {}

    def estimate(self, eps: float, radius: float) -> DistortionEstimate:
        if self.density > eps / 10:
            raise ValueError(
                f"sample density {self.density} too coarse for eps={eps}: "
                "needs density <= eps/10")
        if radius <= 0:
            raise ValueError("distortion radius must be positive")
        idx = self._index_cache.get(eps)
        if idx is None:
            idx = EpsMetricIndex(self.cloud.points, eps)
            self._index_cache[eps] = idx
        if not idx.connected:
            raise ValueError(f"hop graph at eps={eps} is disconnected; "
                             "sample density too coarse")
        d_eps = idx.all_pairs()
        mask = self.d_graph >= radius
        value = 1.0
        if mask.any():
            ratios = self.d_graph[mask] / d_eps[mask]
            value = max(1.0, float(ratios.max()))
        return DistortionEstimate(eps=eps, radius=radius, value=value,
                                  density=self.density,
                                  n_sample=len(self.cloud.points))


def distortion_estimate(G: EmbeddedGraph, eps: float, radius: float,
                        density: float) -> DistortionEstimate:
    """Distortion of the graph at hop radius eps, pairs at intrinsic
    distance >= radius, from a spacing-``density`` self-sample."""
    return DistortionScanner(G, density).estimate(eps, radius)


# ---------------------------------------------------------------------------
# chord-proximity radius certification
# ---------------------------------------------------------------------------

class ShadowRadiusScanner:
    """Shared sample and distance matrix for radius certification sweeps."""

    def __init__(self, G: EmbeddedGraph, resolution: float,
                 metric: GraphMetric | None = None, theta: float | None = None):
        if resolution <= 0:
            raise ValueError("resolution must be positive")
        self.graph = G
        self.resolution = resolution
        self.theta = theta if theta is not None else vertex_angle_constant(G)
        if self.theta >= 1:
            raise ValueError("angle constant must be below 1")
        self.cloud = sample_graph(G, resolution)
        self.metric = metric if metric is not None else length_metric(G)
        self.d_graph = self.metric.distance_matrix(self.cloud.graph_points)
        self.points = self.cloud.points

    def check(self, r: float) -> ShadowRadiusCertificate:
        if r <= 0:
            raise ValueError("radius must be positive")
        P = self.points
        n = len(P)
        th = self.theta
        eps_cap = 0.5 * (1 - th) ** 1.5 * r
        coef = 0.5 * (1 + th)
        inv = 1.0 / (1 - th)
        D = self.d_graph
        diff = P[:, None, :] - P[None, :, :]
        euclid = np.sqrt((diff * diff).sum(axis=2))
        pairs = np.argwhere((euclid <= r) & (euclid > 0))
        for (i, j) in pairs:
            if i >= j:
                continue
            a, b = P[i], P[j]
            ab = b - a
            denom = float(ab @ ab)
            t = np.clip((P - a) @ ab / denom, 0.0, 1.0)
            proj = a + t[:, None] * ab
            eq = np.linalg.norm(P - proj, axis=1)
            sel = eq <= eps_cap
            if not sel.any():
                continue
            lhs = np.minimum(D[i, sel], D[j, sel])
            rhs = coef * D[i, j] + eq[sel] * inv
            bad = lhs > rhs + 1e-12
            if bad.any():
                q = int(np.nonzero(sel)[0][np.argmax(bad)])
                return ShadowRadiusCertificate(
                    r=r, certified=False, resolution=self.resolution,
                    counterexample=(int(i), int(j), q, float(eq[q])))
        return ShadowRadiusCertificate(r=r, certified=True,
                                       resolution=self.resolution)


def shadow_radius_check(G: EmbeddedGraph, r: float, resolution: float,
                        theta: float | None = None) -> ShadowRadiusCertificate:
    """Certify (or refute, with a witness) the chord-proximity property at
    radius r on a spacing-``resolution`` sample of the graph."""
    return ShadowRadiusScanner(G, resolution, theta=theta).check(r)


def shadow_radius_lower_bound(G: EmbeddedGraph, resolution: float,
                              theta: float | None = None,
                              iterations: int = 12) -> float:
    """Largest certified radius on a bisection grid.

    The certified property is monotone in r (smaller radii check a subset
    of triples), so bisection applies.  Raises when no positive radius
    certifies at this resolution.
    """
    scanner = ShadowRadiusScanner(G, resolution, theta=theta)
    span = scanner.points.max(axis=0) - scanner.points.min(axis=0)
    hi = float(np.linalg.norm(span))
    if hi <= 0:
        raise ValueError("degenerate graph extent")
    if scanner.check(hi).certified:
        return hi
    lo = 0.0
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if scanner.check(mid).certified:
            lo = mid
        else:
            hi = mid
    if lo <= 0:
        raise ValueError("no positive radius certified; try a finer resolution")
    return lo


# ---------------------------------------------------------------------------
# parameter selection
# ---------------------------------------------------------------------------

def select_parameters(G: EmbeddedGraph, mode: str, density: float,
                      xi: float | None = None,
                      systole_value: float | None = None,
                      theta: float | None = None,
                      delta_lb: float | None = None,
                      scanner: DistortionScanner | None = None) -> ParameterPlan:
    """Pick a scale and hop radius meeting the reconstruction constraints.

    The scale is 0.9 of its cap; the hop radius starts at its cap and
    halves until the sampled distortion meets (1+2 xi)/(1+ xi).  ``density``
    is the self-sample spacing used by the distortion estimate; the loop
    fails once eps drops below 10x that spacing.
    """
    if mode not in (HOMOTOPY, GEOMETRIC):
        raise ValueError(f"unknown mode {mode!r}")
    ell = systole_value if systole_value is not None else systole(G)
    notes = []

    if mode == HOMOTOPY:
        xi = 1.0 / 6.0 if xi is None else xi
        if not 0 < xi < 0.25:
            raise ValueError(f"homotopy mode needs xi in (0, 1/4), got {xi}")
        beta_cap = ell / 4
        if math.isinf(beta_cap):
            # contractible graph: any scale works, pick from the intrinsic size
            beta_cap = length_metric(G).diameter() / 4
            notes.append("contractible graph: scale cap from intrinsic diameter")
        theta_val = None
        delta_val = None
    else:
        theta_val = theta if theta is not None else vertex_angle_constant(G)
        xi = (1 - theta_val) / 12.0 if xi is None else xi
        if not 0 < xi < (1 - theta_val) / 6:
            raise ValueError(f"geometric mode needs xi in (0, (1-theta)/6) = "
                             f"(0, {(1 - theta_val) / 6:.6g}), got {xi}")
        delta_val = (delta_lb if delta_lb is not None
                     else shadow_radius_lower_bound(G, max(density, 1e-9) * 4,
                                                    theta=theta_val))
        beta_cap = min(delta_val, ell / 18)

    beta = 0.9 * beta_cap
    if mode == HOMOTOPY:
        eps_cap = beta / 3
    else:
        eps_cap = (1 - theta_val) * (1 - theta_val - 6 * xi) * beta / 12

    if scanner is None:
        scanner = DistortionScanner(G, density)
    bound = (1 + 2 * xi) / (1 + xi)
    eps = eps_cap
    est = None
    while True:
        if eps < 10 * scanner.density:
            raise ValueError(
                f"eps shrank to {eps:.6g} (< 10x density {scanner.density:.6g}) "
                "without meeting the distortion bound; density too coarse")
        est = scanner.estimate(eps, beta)
        if est.value <= bound:
            break
        eps *= 0.5

    plan = ParameterPlan(mode=mode, xi=xi, beta=beta, eps=eps,
                         systole=ell, theta=theta_val, delta_lb=delta_val,
                         distortion=est, beta_cap=beta_cap, eps_cap=eps_cap,
                         notes=notes)
    plan.validate()
    return plan


def parse_plan_text(text: str) -> dict:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        k, v = line.split("=", 1)
        out.setdefault(k, v)
    return out
