"""End-to-end reconstruct-and-verify pipeline.

Stages: load, assumption checks, sampling, parameter selection (unless
overridden), hop-metric index, flag complex, Betti numbers, shadow
projection, lifting check, Hausdorff estimate, optional skeleton, plus
deterministic artifacts on disk (report, dumps, SVG, figures).

Exit codes: 2 config error, 3 assumption violation, 4 verification
failure.  The report and SVG are byte-identical across runs with the same
config and seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import complexes, pathmetric, shadow
from .graphs import (GEOMETRIC, HOMOTOPY, EmbeddedGraph, betti_graph,
                     systole, validate_assumptions, vertex_angle_constant)
from .params import DistortionScanner, ParameterPlan, select_parameters
from .sampling import PointCloud, hausdorff_cloud_graph, perturb, sample_graph
from .skeleton import medial_axis

EXIT_CONFIG = 2
EXIT_ASSUMPTION = 3
EXIT_VERIFICATION = 4


class PipelineError(Exception):
    def __init__(self, stage: str, message: str, exit_code: int):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.exit_code = exit_code


@dataclass
class PipelineConfig:
    graph: str | None = None
    cloud: str | None = None
    mode: str = GEOMETRIC
    beta: float | None = None
    eps: float | None = None
    xi: float | None = None
    h: float = 0.05
    noise: float = 0.0
    seed: int = 0
    resolution: float | None = None     # Hausdorff and certification grids
    density: float | None = None        # distortion self-sample spacing
    out: str | None = None
    render: bool = False
    medial: bool = False
    prune: float = 0.0
    compare_euclidean: bool = False
    max_dim: int = 2

    _BOOL_KEYS = ("render", "medial", "compare_euclidean")

    @classmethod
    def from_file(cls, path) -> "PipelineConfig":
        cfg = cls()
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise PipelineError("config", f"{path}:{lineno}: expected "
                                        f"key=value, got {line!r}", EXIT_CONFIG)
                key, value = (t.strip() for t in line.split("=", 1))
                cfg.set_key(key, value)
        return cfg

    def set_key(self, key: str, value: str) -> None:
        key = key.replace("-", "_")
        names = {f.name for f in fields(self)}
        if key not in names:
            raise PipelineError("config", f"unknown config key {key!r}", EXIT_CONFIG)
        cur = getattr(self, key)
        if key in self._BOOL_KEYS:
            setattr(self, key, value.lower() in ("1", "true", "yes", "on"))
        elif key in ("graph", "cloud", "mode", "out"):
            setattr(self, key, value)
        elif key in ("seed", "max_dim"):
            setattr(self, key, int(value))
        else:
            setattr(self, key, float(value))

    def validate(self) -> None:
        if (self.graph is None) == (self.cloud is None):
            raise PipelineError("config", "exactly one of graph or cloud input "
                                "is required", EXIT_CONFIG)
        if self.mode not in (HOMOTOPY, GEOMETRIC):
            raise PipelineError("config", f"unknown mode {self.mode!r}", EXIT_CONFIG)
        for key in ("beta", "eps", "xi", "resolution", "density", "prune"):
            v = getattr(self, key)
            if v is not None and v < 0:
                raise PipelineError("config", f"{key} must be nonnegative", EXIT_CONFIG)
        if self.h <= 0:
            raise PipelineError("config", "sampling spacing h must be positive",
                                EXIT_CONFIG)
        if self.cloud is not None and (self.beta is None or self.eps is None):
            raise PipelineError("config", "cloud input needs explicit beta and "
                                "eps (no graph to select them from)", EXIT_CONFIG)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf"
        return f"{v:.12g}"
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return str(v)


@dataclass
class VerificationReport:
    """Measured quantities plus pass flags, serialisable as key=value."""

    items: list[tuple[str, object]] = field(default_factory=list)
    conclusions: dict[str, bool] = field(default_factory=dict)

    def add(self, key: str, value) -> None:
        self.items.append((key, value))

    def conclude(self, key: str, ok: bool) -> None:
        self.conclusions[key] = bool(ok)
        self.items.append((f"conclusion_{key}", "pass" if ok else "fail"))

    @property
    def passed(self) -> bool:
        return all(self.conclusions.values())

    def get(self, key: str):
        for k, v in self.items:
            if k == key:
                return v
        return None

    def to_text(self) -> str:
        lines = [f"{k}={_fmt(v)}" for k, v in self.items]
        lines.append(f"overall={'pass' if self.passed else 'fail'}")
        lines.append("")
        width = max((len(k) for k in self.conclusions), default=10)
        lines.append("# criterion".ljust(width + 4) + "status")
        for k, ok in self.conclusions.items():
            lines.append(f"# {k.ljust(width + 2)}{'pass' if ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


@dataclass
class PipelineResult:
    report: VerificationReport
    plan: ParameterPlan | None
    cloud: PointCloud
    complex_eps: complexes.FlagComplex
    shadow_eps: shadow.ShadowComplex | None
    graph: EmbeddedGraph | None
    skeleton: object | None = None
    shadow_euclid: shadow.ShadowComplex | None = None
    artifacts: dict[str, str] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if self.report.passed else EXIT_VERIFICATION


def run_pipeline(cfg: PipelineConfig) -> PipelineResult:
    cfg.validate()
    report = VerificationReport()
    report.add("mode", cfg.mode)
    report.add("seed", cfg.seed)

    # ---- load -----------------------------------------------------------
    G = None
    if cfg.graph is not None:
        try:
            G = EmbeddedGraph.load(cfg.graph)
        except (OSError, ValueError) as exc:
            raise PipelineError("load", str(exc), EXIT_CONFIG) from exc
        report.add("graph", cfg.graph)
        if cfg.mode == GEOMETRIC and G.dim != 2:
            raise PipelineError("load", "geometric mode needs a planar graph",
                                EXIT_CONFIG)

    # ---- assumptions ----------------------------------------------------
    if G is not None:
        assumptions = validate_assumptions(G, cfg.mode)
        report.add("assumption_violations", len(assumptions.violations))
        if not assumptions.ok:
            raise PipelineError(
                "assumptions", "; ".join(assumptions.violations), EXIT_ASSUMPTION)
        bg = betti_graph(G)
        report.add("betti_graph", bg)
        ell = systole(G)
        report.add("systole", ell)
        theta = vertex_angle_constant(G) if cfg.mode == GEOMETRIC else None
        if theta is not None:
            report.add("theta", theta)
    else:
        bg = None
        ell = None
        theta = None

    # ---- sample ---------------------------------------------------------
    if G is not None:
        base = sample_graph(G, cfg.h)
        cloud = perturb(base, cfg.noise, cfg.seed)
    else:
        try:
            cloud = PointCloud.load(cfg.cloud)
        except (OSError, ValueError) as exc:
            raise PipelineError("sample", str(exc), EXIT_CONFIG) from exc
        report.add("cloud", cfg.cloud)
    report.add("n_points", len(cloud))

    # ---- parameters -----------------------------------------------------
    plan = None
    if cfg.beta is not None and cfg.eps is not None:
        beta, eps = cfg.beta, cfg.eps
        xi = cfg.xi if cfg.xi is not None else 1.0 / 6.0
        report.add("parameters", "overridden")
    else:
        if G is None:
            raise PipelineError("parameters", "parameter selection needs a "
                                "graph input", EXIT_CONFIG)
        density = cfg.density
        if density is None:
            density = max(G.total_length() / 1500.0, 1e-6)
        try:
            plan = select_parameters(G, cfg.mode, density=density, xi=cfg.xi,
                                     systole_value=ell, theta=theta)
        except ValueError as exc:
            raise PipelineError("parameters", str(exc), EXIT_CONFIG) from exc
        beta, eps, xi = plan.beta, plan.eps, plan.xi
        for k, v in plan.to_keyvalues():
            if k not in ("mode",):
                report.add(f"plan_{k}", v)
    report.add("beta", beta)
    report.add("eps", eps)
    report.add("xi", xi)
    required_dh = 0.5 * xi * eps
    report.add("required_dh", required_dh)
    resolution = cfg.resolution if cfg.resolution is not None else beta / 50.0
    report.add("resolution", resolution)

    if G is not None:
        dh_sample = hausdorff_cloud_graph(cloud, G, resolution=min(cfg.h, resolution))
        report.add("dh_sample_graph", dh_sample)
        report.add("hypothesis_dh_met", dh_sample < required_dh)
        if cfg.mode == GEOMETRIC and theta is not None:
            report.add("hypothesis_xi_range", 0 < xi < (1 - theta) / 6)
        else:
            report.add("hypothesis_xi_range", 0 < xi < 0.25)

    # ---- hop metric and complex ------------------------------------------
    index = pathmetric.build(cloud, eps)
    report.add("eps_graph_connected", index.connected)
    report.add("eps_graph_components", index.n_components)
    K = complexes.rips(index.all_pairs(), beta, max_dim=cfg.max_dim,
                  metric_tag=complexes.EPS_PATH)
    report.add("complex_simplices",
               tuple(K.count(d) for d in range(cfg.max_dim + 1)))
    b_eps = complexes.betti(K, 1)
    report.add("betti_rips_eps", b_eps)

    KE = None
    if cfg.compare_euclidean:
        KE = complexes.rips(complexes.euclidean_distance_matrix(cloud.points), beta,
                       max_dim=cfg.max_dim)
        report.add("betti_rips_euclid", complexes.betti(KE, 1))

    if bg is not None:
        report.conclude("betti_rips_matches_graph", b_eps == bg)

    # ---- shadow ----------------------------------------------------------
    sc = None
    scE = None
    skel = None
    if cfg.mode == GEOMETRIC:
        sc = shadow.project(K, cloud.points)
        b_sh = sc.betti()
        report.add("betti_shadow", b_sh)
        report.add("shadow_vertices", sc.n_vertices)
        report.add("shadow_edges", sc.n_edges)
        report.add("shadow_covered_faces", len(sc.covered_faces()))
        if bg is not None:
            report.conclude("betti_shadow_matches_graph", b_sh == bg)

        lift = shadow.check_lifting(K, cloud.points)
        report.add("lifting_examined", lift.examined)
        report.add("lifting_satisfied_a", lift.satisfied_a)
        report.add("lifting_satisfied_b", lift.satisfied_b)
        report.add("lifting_violations", len(lift.violations))
        report.conclude("lifting_ok", lift.ok)

        if G is not None:
            dh_shadow = shadow.shadow_hausdorff(sc, G, resolution)
            bound = beta + 0.5 * xi * eps
            report.add("dh_shadow_graph", dh_shadow)
            report.add("shadow_bound", bound)
            report.conclude("dh_shadow_within_bound",
                            dh_shadow <= bound + resolution)

        if KE is not None:
            scE = shadow.project(KE, cloud.points)
            report.add("betti_shadow_euclid", scE.betti())

        if cfg.medial:
            spacing = max(resolution, beta / 20.0)
            skel = medial_axis(sc, spacing=spacing, prune=cfg.prune)
            report.add("skeleton_nodes", len(skel.nodes))
            report.add("skeleton_edges", len(skel.edges))
            report.add("skeleton_betti", skel.betti())

    result = PipelineResult(report=report, plan=plan, cloud=cloud,
                            complex_eps=K, shadow_eps=sc, graph=G,
                            skeleton=skel, shadow_euclid=scE)

    # ---- artifacts -------------------------------------------------------
    if cfg.out is not None:
        outdir = Path(cfg.out)
        outdir.mkdir(parents=True, exist_ok=True)
        cloud.save(outdir / "cloud.csv")
        result.artifacts["cloud"] = str(outdir / "cloud.csv")
        K.dump(outdir / "complex.txt")
        result.artifacts["complex"] = str(outdir / "complex.txt")
        if plan is not None:
            (outdir / "plan.txt").write_text(plan.to_text())
            result.artifacts["plan"] = str(outdir / "plan.txt")
        if sc is not None:
            sc.dump(outdir / "shadow.txt")
            result.artifacts["shadow"] = str(outdir / "shadow.txt")
        if cfg.render and sc is not None:
            svg = shadow.render_svg(sc, overlays={"graph": G, "cloud": cloud,
                                                  "skeleton": skel})
            (outdir / "shadow.svg").write_text(svg)
            result.artifacts["svg"] = str(outdir / "shadow.svg")
            from .figures import render_overview
            png = outdir / "shadow.png"
            render_overview(png, graph=G, cloud=cloud, sc=sc, skeleton=skel,
                            title=f"mode={cfg.mode} beta={beta:.4g} eps={eps:.4g}")
            result.artifacts["figure"] = str(png)
            if scE is not None:
                pngE = outdir / "shadow_euclid.png"
                render_overview(pngE, graph=G, cloud=cloud, sc=scE,
                                title=f"euclidean rips beta={beta:.4g}")
                result.artifacts["figure_euclid"] = str(pngE)
        (outdir / "report.txt").write_text(report.to_text())
        result.artifacts["report"] = str(outdir / "report.txt")
    return result
