"""Command line interface.

Every pipeline stage is also runnable standalone on dumped intermediate
files, so the full run can be reproduced piecewise:

    ripshadow sample --graph g.txt --h 0.05 --noise 0.002 --seed 1 --out cloud.csv
    ripshadow metric --cloud cloud.csv --eps 0.2 --out dist.csv
    ripshadow rips --cloud cloud.csv --eps 0.2 --beta 0.5 --out complex.txt
    ripshadow betti --complex complex.txt
    ripshadow shadow --complex complex.txt --cloud cloud.csv --out shadow.txt
    ripshadow lifting --complex complex.txt --cloud cloud.csv
    ripshadow params --graph g.txt --mode geometric
    ripshadow render --shadow shadow.txt --out shadow.svg
    ripshadow pipeline --graph g.txt --mode geometric --out results/

Exit codes: 2 config error, 3 assumption violation, 4 verification failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import complexes, pathmetric, shadow
from .graphs import EmbeddedGraph, validate_assumptions
from .params import select_parameters
from .pipeline import (EXIT_ASSUMPTION, EXIT_CONFIG, EXIT_VERIFICATION,
                       PipelineConfig, PipelineError, run_pipeline)
from .sampling import PointCloud, perturb, sample_graph


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--graph", help="embedded graph file")
    p.add_argument("--cloud", help="point cloud CSV")
    p.add_argument("--mode", choices=("homotopy", "geometric"))
    p.add_argument("--beta", type=float, help="complex scale")
    p.add_argument("--eps", type=float, help="hop radius of the path metric")
    p.add_argument("--xi", type=float, help="slack fraction")
    p.add_argument("--h", type=float, help="sampling spacing")
    p.add_argument("--noise", type=float, help="noise bound")
    p.add_argument("--seed", type=int, help="noise seed")
    p.add_argument("--resolution", type=float,
                   help="grid resolution for Hausdorff estimates")
    p.add_argument("--density", type=float,
                   help="self-sample spacing for the distortion estimate")
    p.add_argument("--out", help="output directory")
    p.add_argument("--render", action="store_true", default=None,
                   help="write SVG and PNG figures")
    p.add_argument("--medial-axis", dest="medial", action="store_true",
                   default=None, help="compute the pruned skeleton")
    p.add_argument("--prune", type=float, help="skeleton prune length")
    p.add_argument("--compare-euclidean", dest="compare_euclidean",
                   action="store_true", default=None,
                   help="also build the Euclidean-metric complex and shadow")


def cmd_pipeline(args) -> int:
    cfg = (PipelineConfig.from_file(args.config) if args.config
           else PipelineConfig())
    for key in ("graph", "cloud", "mode", "beta", "eps", "xi", "h", "noise",
                "seed", "resolution", "density", "out", "render", "medial",
                "prune", "compare_euclidean"):
        v = getattr(args, key, None)
        if v is not None:
            setattr(cfg, key, v)
    result = run_pipeline(cfg)
    sys.stdout.write(result.report.to_text())
    return result.exit_code


def cmd_sample(args) -> int:
    G = EmbeddedGraph.load(args.graph)
    cloud = sample_graph(G, args.h)
    if args.noise:
        cloud = perturb(cloud, args.noise, args.seed)
    cloud.save(args.out)
    print(f"{len(cloud)} points -> {args.out}")
    return 0


def cmd_metric(args) -> int:
    cloud = PointCloud.load(args.cloud)
    index = pathmetric.build(cloud, args.eps)
    index.dump_matrix(args.out)
    print(f"{index.n}x{index.n} matrix, {index.edge_count()} neighbor pairs, "
          f"{'connected' if index.connected else 'disconnected'} -> {args.out}")
    return 0


def _metric_matrix(args) -> np.ndarray:
    if args.matrix:
        return pathmetric.load_matrix(args.matrix)
    cloud = PointCloud.load(args.cloud)
    if args.eps is not None:
        return pathmetric.build(cloud, args.eps).all_pairs()
    return complexes.euclidean_distance_matrix(cloud.points)


def cmd_rips(args) -> int:
    D = _metric_matrix(args)
    tag = complexes.EPS_PATH if (args.eps is not None or args.matrix) else complexes.EUCLIDEAN
    K = complexes.rips(D, args.beta, max_dim=args.max_dim, metric_tag=tag)
    K.dump(args.out)
    counts = " ".join(str(K.count(d)) for d in range(args.max_dim + 1))
    print(f"simplices per dim: {counts} -> {args.out}")
    return 0


def cmd_betti(args) -> int:
    K = complexes.FlagComplex.load(args.complex)
    b = complexes.betti(K, args.up_to)
    print(" ".join(str(x) for x in b))
    return 0


def cmd_shadow(args) -> int:
    K = complexes.FlagComplex.load(args.complex)
    cloud = PointCloud.load(args.cloud)
    sc = shadow.project(K, cloud.points)
    if args.out:
        sc.dump(args.out)
    b = sc.betti()
    print(f"V={sc.n_vertices} E={sc.n_edges} covered={len(sc.covered_faces())} "
          f"betti={b[0]} {b[1]}")
    return 0


def cmd_lifting(args) -> int:
    K = complexes.FlagComplex.load(args.complex)
    cloud = PointCloud.load(args.cloud)
    rep = shadow.check_lifting(K, cloud.points)
    print(f"examined={rep.examined} satisfied_a={rep.satisfied_a} "
          f"satisfied_b={rep.satisfied_b} violations={len(rep.violations)}")
    for v in rep.violations[:20]:
        print(f"violation: edges {v[0]} x {v[1]}")
    return 0 if rep.ok else EXIT_VERIFICATION


def cmd_params(args) -> int:
    G = EmbeddedGraph.load(args.graph)
    rep = validate_assumptions(G, args.mode)
    if not rep.ok:
        for v in rep.violations:
            print(f"assumption violation: {v}", file=sys.stderr)
        return EXIT_ASSUMPTION
    density = args.density
    if density is None:
        density = max(G.total_length() / 1500.0, 1e-6)
    plan = select_parameters(G, args.mode, density=density, xi=args.xi)
    sys.stdout.write(plan.to_text())
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(plan.to_text())
    return 0


def cmd_render(args) -> int:
    verts, tags, edges, faces = shadow.load_shadow_dump(args.shadow)
    # rebuild a minimal picture straight from the dump
    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    xs = [p[0] for p in verts.values()]
    ys = [p[1] for p in verts.values()]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    vb = f"{x0 - pad:.6f} {-(y1 + pad):.6f} {(x1 - x0) + 2 * pad:.6f} {(y1 - y0) + 2 * pad:.6f}"
    lines.append(f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                 f'width="640" height="640" viewBox="{vb}">')
    lines.append('<g transform="scale(1,-1)">')
    for covered, cyc in faces:
        if covered and len(cyc) >= 3:
            d = "M " + " L ".join(f"{verts[v][0]:.6f} {verts[v][1]:.6f}" for v in cyc) + " Z"
            lines.append(f'<path d="{d}" fill="#cfe0f5" stroke="none"/>')
    sw = max(x1 - x0, y1 - y0, 1e-9) / 400.0
    for (a, b) in edges:
        lines.append(f'<line x1="{verts[a][0]:.6f}" y1="{verts[a][1]:.6f}" '
                     f'x2="{verts[b][0]:.6f}" y2="{verts[b][1]:.6f}" '
                     f'stroke="#5b6b86" stroke-width="{sw:.6f}"/>')
    for vid, p in verts.items():
        if tags.get(vid) == "crossing":
            lines.append(f'<circle cx="{p[0]:.6f}" cy="{p[1]:.6f}" '
                         f'r="{1.6 * sw:.6f}" fill="#d93636"/>')
    lines.append('</g></svg>')
    svg = "\n".join(lines) + "\n"
    with open(args.out, "w") as fh:
        fh.write(svg)
    print(args.out)
    if args.png:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        from matplotlib.collections import LineCollection
        fig, ax = plt.subplots(figsize=(6, 6))
        for covered, cyc in faces:
            if covered and len(cyc) >= 3:
                ax.fill([verts[v][0] for v in cyc], [verts[v][1] for v in cyc],
                        color="#cfe0f5", zorder=1)
        segs = [(verts[a], verts[b]) for (a, b) in edges]
        ax.add_collection(LineCollection(segs, colors="#5b6b86", linewidths=0.5))
        ax.set_aspect("equal")
        ax.autoscale_view()
        ax.set_xticks([])
        ax.set_yticks([])
        fig.tight_layout()
        fig.savefig(args.png, dpi=150)
        plt.close(fig)
        print(args.png)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ripshadow",
                                 description="Embedded graph reconstruction "
                                 "via path-metric flag complexes and their "
                                 "planar shadows")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a graph into a point cloud")
    p.add_argument("--graph", required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("metric", help="dump the hop-metric distance matrix")
    p.add_argument("--cloud", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("rips", help="build the flag complex at a scale")
    p.add_argument("--cloud")
    p.add_argument("--matrix", help="precomputed distance matrix CSV")
    p.add_argument("--eps", type=float,
                   help="hop radius; omit for the Euclidean metric")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--max-dim", type=int, default=2, dest="max_dim")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_rips)

    p = sub.add_parser("betti", help="Betti numbers of a dumped complex")
    p.add_argument("--complex", required=True)
    p.add_argument("--up-to", type=int, default=1, dest="up_to")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("shadow", help="project a complex to its planar shadow")
    p.add_argument("--complex", required=True)
    p.add_argument("--cloud", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_shadow)

    p = sub.add_parser("lifting", help="check the path-lifting condition")
    p.add_argument("--complex", required=True)
    p.add_argument("--cloud", required=True)
    p.set_defaults(func=cmd_lifting)

    p = sub.add_parser("params", help="select reconstruction parameters")
    p.add_argument("--graph", required=True)
    p.add_argument("--mode", choices=("homotopy", "geometric"),
                   default="homotopy")
    p.add_argument("--xi", type=float)
    p.add_argument("--density", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("render", help="render a shadow dump to SVG/PNG")
    p.add_argument("--shadow", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--png")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("pipeline", help="full reconstruct-and-verify run")
    _add_pipeline_flags(p)
    p.set_defaults(func=cmd_pipeline)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
