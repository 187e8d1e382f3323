"""Embedded graph reconstruction from noisy point samples.

A sample Hausdorff-close to a planar graph is turned into a flag complex
under a hop-bounded path metric; the complex recovers the graph's homotopy
type, and its planar shadow recovers the graph geometrically, up to a
quantified Hausdorff distance.  The package also ships the parameter
machinery (systole, distortion, angle constant, chord-proximity radius)
needed to choose the scales, plus verification tooling (Betti numbers over
GF(2), an exact shadow arrangement, a path-lifting checker) and a CLI.
"""

from .geometry import (CCW, COLLINEAR, CW, hausdorff_distance, orientation,
                       point_in_triangle, segment_intersect)
from .graphs import (EmbeddedGraph, GraphMetric, GraphPoint, betti_graph,
                     length_metric, systole, validate_assumptions,
                     vertex_angle_constant)
from .pathmetric import EpsMetricIndex, build, d_eps, diam_eps
from .complexes import (FlagComplex, betti, euclidean_distance_matrix,
                        euler_characteristic, rips)
from .sampling import PointCloud, perturb, sample_graph
from .shadow import (LiftingReport, ShadowComplex, check_lifting, project,
                     render_svg, shadow_betti, shadow_hausdorff)
from .skeleton import SkeletonGraph, medial_axis
from .params import (DistortionEstimate, ParameterPlan, ShadowRadiusCertificate,
                     distortion_estimate, select_parameters,
                     shadow_radius_check, shadow_radius_lower_bound)
from .pipeline import PipelineConfig, PipelineResult, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "CCW", "COLLINEAR", "CW",
    "DistortionEstimate", "EmbeddedGraph", "EpsMetricIndex", "FlagComplex",
    "GraphMetric", "GraphPoint", "LiftingReport", "ParameterPlan",
    "PipelineConfig", "PipelineResult", "PointCloud", "ShadowComplex",
    "ShadowRadiusCertificate", "SkeletonGraph",
    "betti", "betti_graph", "build", "check_lifting", "d_eps", "diam_eps",
    "distortion_estimate", "euclidean_distance_matrix", "euler_characteristic",
    "hausdorff_distance", "length_metric", "medial_axis", "orientation",
    "perturb", "point_in_triangle", "project", "render_svg", "rips",
    "run_pipeline", "sample_graph", "segment_intersect", "select_parameters",
    "shadow_betti", "shadow_hausdorff", "shadow_radius_check",
    "shadow_radius_lower_bound", "systole", "validate_assumptions",
    "vertex_angle_constant",
]
