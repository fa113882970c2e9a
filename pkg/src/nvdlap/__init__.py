"""Generalized Euclidean node-vector distances via Laplacian solvers."""

from .graph import ComponentLabeling, Graph, build_graph, connected_components, laplacian_apply, weighted_degrees
from .metrics import effective_resistance, ge_distance, polarization_score
from .oracle import ge_distance_exact, pinv_laplacian
from .solvers import METHODS, SolveReport, SolverConfig, solve_lap

__all__ = [
    "METHODS",
    "ComponentLabeling",
    "Graph",
    "SolveReport",
    "SolverConfig",
    "build_graph",
    "connected_components",
    "effective_resistance",
    "ge_distance",
    "ge_distance_exact",
    "laplacian_apply",
    "pinv_laplacian",
    "polarization_score",
    "solve_lap",
    "weighted_degrees",
]
