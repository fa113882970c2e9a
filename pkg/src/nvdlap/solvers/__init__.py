"""Laplacian solvers: conjugate gradient with Jacobi, augmented spanning tree
or approximate Cholesky preconditioning."""

from .approxchol import approx_chol_factor
from .cg import build_jacobi_precond, cg_solve
from .core import (
    METHODS,
    Preconditioner,
    SolveReport,
    SolverConfig,
    project_zero_mean,
)
from .dispatch import solve_lap
from .tree import (
    LDLFactor,
    SpanningTree,
    build_aug_tree_precond,
    build_spanning_tree,
    tree_solve,
)

__all__ = [
    "METHODS",
    "LDLFactor",
    "Preconditioner",
    "SolveReport",
    "SolverConfig",
    "SpanningTree",
    "approx_chol_factor",
    "build_aug_tree_precond",
    "build_jacobi_precond",
    "build_spanning_tree",
    "cg_solve",
    "project_zero_mean",
    "solve_lap",
    "tree_solve",
]
