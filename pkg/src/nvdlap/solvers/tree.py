"""Spanning tree solves and the augmented-tree preconditioner."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra

from ..graph import Graph, from_arrays
from . import _kernels
from .core import Preconditioner, SolverConfig, project_zero_mean


@dataclass(frozen=True)
class SpanningTree:
    """Rooted spanning forest.

    ``parent[v]`` is ``-1`` for roots; ``weight[v]`` is the weight of the edge
    ``(v, parent[v])``. ``order`` lists nodes so every parent precedes its
    children and ``root[v]`` names the root of ``v``'s tree.
    """

    n: int
    parent: np.ndarray
    weight: np.ndarray
    order: np.ndarray
    root: np.ndarray

    def edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        child = np.flatnonzero(self.parent >= 0)
        return child, self.parent[child], self.weight[child]

    def as_graph(self) -> Graph:
        return from_arrays(self.n, *self.edges())


def build_spanning_tree(g: Graph, seed: int = 0) -> SpanningTree:
    """Shortest-path tree under edge lengths ``1/w``.

    Each component is rooted at its node of largest weighted degree (smallest
    id on ties). The construction is deterministic; ``seed`` is accepted for
    interface symmetry with the randomized builders.
    """
    n = g.n
    comps = g.components
    by_degree = np.lexsort((np.arange(n), -g.degrees))
    _, first = np.unique(comps.label[by_degree], return_index=True)
    roots = by_degree[first]

    lengths = sp.csr_matrix((1.0 / g.weights, g.neighbors, g.offsets), shape=(n, n))
    _, pred, _ = dijkstra(lengths, directed=True, indices=roots,
                          return_predecessors=True, min_only=True)
    parent = np.where(pred < 0, -1, pred).astype(np.int64)
    weight = np.zeros(n)
    child = np.flatnonzero(parent >= 0)
    if len(child):
        weight[child] = np.asarray(g.adjacency[child, parent[child]]).ravel()
    order, root = _kernels.tree_order(parent)
    return SpanningTree(n, parent, weight, order, root)


def _check_zero_sum(b: np.ndarray, label: np.ndarray, count: int) -> None:
    sums = np.bincount(label, weights=b, minlength=count)
    scale = np.bincount(label, weights=np.abs(b), minlength=count)
    bad = np.abs(sums) > 1e-9 * scale + 1e-300
    if bad.any():
        c = int(np.flatnonzero(bad)[0])
        raise ValueError(
            f"right-hand side must sum to zero on every tree component; "
            f"component {c} sums to {sums[c]:.3e}"
        )


def tree_solve(t: SpanningTree, b) -> np.ndarray:
    """Exact solve of ``L_tree x = b`` in linear time.

    ``b`` must sum to zero on each tree; the returned ``x`` has zero mean on
    each tree.
    """
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (t.n,):
        raise ValueError(f"vector has shape {b.shape}, expected ({t.n},)")
    _, label = np.unique(t.root, return_inverse=True)
    count = int(label.max()) + 1 if t.n else 0
    _check_zero_sum(b, label, count)
    x = _kernels.tree_solve_kernel(t.order, t.parent, t.weight, b)
    means = np.bincount(label, weights=x, minlength=count) / np.bincount(label, minlength=count)
    return x - means[label]


def sample_off_tree_edges(g: Graph, t: SpanningTree, extra: int, seed: int = 0):
    """Choose ``extra`` distinct non-tree edges, each draw proportional to
    weight (weighted sampling without replacement via exponential keys)."""
    u, v, w = g.edges()
    tu, tv, _ = t.edges()
    n = g.n
    tkeys = np.minimum(tu, tv) * n + np.maximum(tu, tv)
    off = ~np.isin(u * n + v, tkeys)
    u, v, w = u[off], v[off], w[off]
    if extra >= len(u):
        return u, v, w
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    score = np.log(rng.random(len(u))) / w
    pick = np.sort(np.argpartition(-score, extra)[:extra]) if extra else np.empty(0, np.int64)
    return u[pick], v[pick], w[pick]


class LDLFactor:
    """Elimination factor ``L ~ U D U^T`` produced by the compiled kernel."""

    def __init__(self, n: int, u, v, w, exact: bool, seed: int):
        (self.order, self.colptr, self.rows, self.vals,
         self.diag) = _kernels.eliminate(
            n, np.ascontiguousarray(u, dtype=np.int64),
            np.ascontiguousarray(v, dtype=np.int64),
            np.ascontiguousarray(w, dtype=np.float64), bool(exact), int(seed) & (2**64 - 1))

    @property
    def nnz(self) -> int:
        return len(self.rows)

    def solve(self, b: np.ndarray) -> np.ndarray:
        return _kernels.ldl_solve(self.order, self.colptr, self.rows, self.vals, self.diag,
                                  np.ascontiguousarray(b, dtype=np.float64))


def default_extra(n: int) -> int:
    return math.isqrt(max(n - 1, 0)) + 1


def build_aug_tree_precond(g: Graph, t: SpanningTree | None = None,
                           extra: int | None = None, seed: int = 0) -> Preconditioner:
    """Exact solver for a spanning tree plus ``extra`` sampled off-tree edges.

    The augmented graph is factored exactly with minimum-degree elimination:
    tree vertices go first at degree one or two, leaving a dense kernel on at
    most ``2 * extra`` vertices. With the default ``extra = ceil(sqrt(n))``
    that kernel costs ``O(n)`` memory.
    """
    if t is None:
        t = build_spanning_tree(g, seed)
    if extra is None:
        extra = default_extra(g.n)
    if extra < 0:
        raise ValueError(f"extra must be >= 0, got {extra}")
    tu, tv, tw = t.edges()
    xu, xv, xw = sample_off_tree_edges(g, t, extra, seed)
    factor = LDLFactor(g.n, np.concatenate([tu, xu]), np.concatenate([tv, xv]),
                       np.concatenate([tw, xw]), exact=True, seed=seed)
    return Preconditioner("aug_tree", factor.solve, g.components, nnz=factor.nnz)


def aug_tree_precond_from_config(g: Graph, cfg: SolverConfig) -> Preconditioner:
    return build_aug_tree_precond(g, build_spanning_tree(g, cfg.seed), cfg.aug_extra, cfg.seed)


def tree_precond(t: SpanningTree, g: Graph) -> Preconditioner:
    """Preconditioner that applies :func:`tree_solve` directly."""
    return Preconditioner("tree", lambda r: tree_solve(t, r), g.components, nnz=t.n)
