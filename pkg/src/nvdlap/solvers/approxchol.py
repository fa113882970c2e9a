from __future__ import annotations

from ..graph import Graph
from .core import Preconditioner, SolverConfig
from .tree import LDLFactor


def approx_chol_factor(g: Graph, cfg: SolverConfig | None = None) -> Preconditioner:
    """Randomized sparse Cholesky preconditioner.

    Vertices are eliminated in minimum-degree order (seeded random tie
    breaking). Instead of the full clique on its ``k`` neighbors, each pivot
    contributes ``k - 1`` edges: neighbors are visited in increasing weight
    and each is joined to a later neighbor drawn proportionally to weight,
    with edge weights chosen so the expected result is the exact clique.
    Pivots with at most two neighbors, and hence whole trees, are eliminated
    exactly.
    """
    cfg = cfg or SolverConfig()
    u, v, w = g.edges()
    factor = LDLFactor(g.n, u, v, w, exact=False, seed=cfg.seed)
    return Preconditioner("approx_chol", factor.solve, g.components, nnz=factor.nnz)
