from __future__ import annotations

import time

import numpy as np

from ..graph import Graph
from ..oracle import pinv_laplacian
from .approxchol import approx_chol_factor
from .cg import build_jacobi_precond, cg_solve
from .core import METHODS, SolveReport, SolverConfig, project_zero_mean
from .tree import aug_tree_precond_from_config


def solve_lap(g: Graph, y, method: str = "approx_chol",
              cfg: SolverConfig | None = None) -> SolveReport:
    """Approximate ``L^+ y`` with the named method.

    ``y`` is first projected to zero mean per component (``L^+ y = L^+ P y``).
    ``baseline`` multiplies by the dense pseudoinverse; the other methods run
    conjugate gradient, optionally preconditioned. Preconditioner
    construction is included in ``wall_time``.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {', '.join(METHODS)}")
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (g.n,):
        raise ValueError(f"vector has shape {y.shape}, expected ({g.n},)")
    b = project_zero_mean(y, g.components)

    if method == "baseline":
        x = pinv_laplacian(g) @ b
        bnorm = np.linalg.norm(b)
        res = np.linalg.norm(g.laplacian @ x - b) / bnorm if bnorm > 0 else 0.0
        return SolveReport(x, 0, float(res), time.perf_counter() - t0, method, True)

    if method == "cg":
        pre = None
    elif method == "cg_jacobi":
        pre = build_jacobi_precond(g)
    elif method == "aug_tree":
        pre = aug_tree_precond_from_config(g, cfg)
    else:
        pre = approx_chol_factor(g, cfg)
    report = cg_solve(g, b, cfg, pre, method=method)
    report.wall_time = time.perf_counter() - t0
    return report
