from __future__ import annotations

import time

import numpy as np

from ..graph import Graph
from .core import Preconditioner, SolveReport, SolverConfig, project_zero_mean


def cg_solve(g: Graph, b, cfg: SolverConfig | None = None,
             pre: Preconditioner | None = None, callback=None,
             method: str | None = None) -> SolveReport:
    """(Preconditioned) conjugate gradient for ``L x = b``.

    Parameters
    ----------
    g : Graph
    b : array_like
        Right-hand side; must sum to zero on each component (see
        :func:`project_zero_mean`), otherwise no solution exists and the
        report comes back with ``converged=False``.
    cfg : SolverConfig, optional
    pre : Preconditioner, optional
    callback : callable, optional
        Called with the current iterate after every iteration.

    Returns
    -------
    SolveReport
        ``x`` is projected to zero mean per component, i.e. the
        pseudoinverse solution. Hitting ``max_iters`` is reported, not
        raised.
    """
    t0 = time.perf_counter()
    cfg = cfg or SolverConfig()
    if method is None:
        method = "cg" if pre is None else f"pcg[{pre.name}]"
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (g.n,):
        raise ValueError(f"right-hand side has shape {b.shape}, expected ({g.n},)")
    if not np.all(np.isfinite(b)):
        raise ValueError("right-hand side contains non-finite values")

    bnorm = np.linalg.norm(b)
    x = np.zeros(g.n)
    if bnorm == 0.0:
        return SolveReport(x, 0, 0.0, time.perf_counter() - t0, method, True)

    lap = g.laplacian
    tol = cfg.rel_tolerance * bnorm
    maxit = cfg.iteration_cap(g.n)
    precond = pre.apply if pre is not None else (lambda r: r)

    r = b.copy()
    z = precond(r)
    p = z.copy()
    rz = r @ z
    it = 0
    while it < maxit:
        lp = lap @ p
        plp = p @ lp
        if not plp > 0.0:
            break
        alpha = rz / plp
        x += alpha * p
        r -= alpha * lp
        it += 1
        if callback is not None:
            callback(x)
        if np.linalg.norm(r) <= tol:
            # the recurrence can drift from the true residual; restart from it
            r = b - lap @ x
            if np.linalg.norm(r) <= tol:
                break
            z = precond(r)
            p = z.copy()
            rz = r @ z
            continue
        z = precond(r)
        rz_new = r @ z
        p *= rz_new / rz
        p += z
        rz = rz_new

    x = project_zero_mean(x, g.components)
    res = np.linalg.norm(b - lap @ x) / bnorm
    return SolveReport(x, it, float(res), time.perf_counter() - t0, method,
                       bool(res <= cfg.rel_tolerance))


def build_jacobi_precond(g: Graph) -> Preconditioner:
    """Diagonal scaling by weighted degree; isolated nodes pass through."""
    deg = g.degrees
    inv = np.where(deg > 0, 1.0 / np.where(deg > 0, deg, 1.0), 1.0)
    return Preconditioner("jacobi", lambda r: r * inv, g.components, nnz=g.n)
