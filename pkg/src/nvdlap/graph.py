"""Immutable sparse undirected graphs and their Laplacian operator."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components as _cc


@dataclass(frozen=True)
class ComponentLabeling:
    """Per-node connected component ids.

    Component ids are dense in ``[0, count)`` and numbered by the smallest
    node id they contain.
    """

    label: np.ndarray
    count: int
    sizes: np.ndarray


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected weighted graph in compressed adjacency form.

    Neighbor lists are sorted and duplicate free, the adjacency is symmetric,
    there are no self-loops and every weight is strictly positive. Use
    :func:`build_graph` rather than the constructor; arrays are read-only.
    """

    n: int
    offsets: np.ndarray
    neighbors: np.ndarray
    weights: np.ndarray

    @property
    def m(self) -> int:
        return len(self.neighbors) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        rows = np.repeat(np.arange(self.n), np.diff(self.offsets))
        return _readonly(np.bincount(rows, weights=self.weights, minlength=self.n))

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        return sp.csr_matrix(
            (self.weights, self.neighbors, self.offsets), shape=(self.n, self.n)
        )

    @cached_property
    def laplacian(self) -> sp.csr_matrix:
        """Sparse ``L = D - A``."""
        lap = (sp.diags(self.degrees) - self.adjacency).tocsr()
        lap.sort_indices()
        return lap

    @cached_property
    def components(self) -> ComponentLabeling:
        return connected_components(self)

    def edges(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return ``(u, v, w)`` arrays of the undirected edges with ``u < v``,
        sorted by ``u`` then ``v``."""
        rows = np.repeat(np.arange(self.n), np.diff(self.offsets))
        keep = rows < self.neighbors
        return rows[keep], self.neighbors[keep], self.weights[keep]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.neighbors, other.neighbors)
            and np.array_equal(self.weights, other.weights)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def from_arrays(n: int, u, v, w=None) -> Graph:
    """Build a graph from parallel endpoint/weight arrays.

    Duplicate pairs are merged by summing weights and self-loops are dropped.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"graph needs at least one node, got n={n}")
    u = np.asarray(u, dtype=np.int64).ravel()
    v = np.asarray(v, dtype=np.int64).ravel()
    w = np.ones(len(u)) if w is None else np.asarray(w, dtype=np.float64).ravel()
    if not (len(u) == len(v) == len(w)):
        raise ValueError("edge arrays must have equal length")

    bad = (u < 0) | (u >= n) | (v < 0) | (v >= n)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise ValueError(
            f"edge #{i} ({u[i]}, {v[i]}, {w[i]:g}): node index out of range for n={n}"
        )
    bad = ~np.isfinite(w) | (w <= 0)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise ValueError(f"edge #{i} ({u[i]}, {v[i]}, {w[i]:g}): weight must be finite and > 0")

    keep = u != v
    lo = np.minimum(u[keep], v[keep])
    hi = np.maximum(u[keep], v[keep])
    w = w[keep]
    key = lo * n + hi
    # sort weights within each key too, so merged sums do not depend on input order
    order = np.lexsort((w, key))
    key, w = key[order], w[order]
    ukey, start = np.unique(key, return_index=True)
    wsum = np.add.reduceat(w, start) if len(w) else w
    lo, hi = ukey // n, ukey % n

    rows = np.concatenate([lo, hi])
    cols = np.concatenate([hi, lo])
    vals = np.concatenate([wsum, wsum])
    order = np.lexsort((cols, rows))
    rows, cols, vals = rows[order], cols[order], vals[order]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n), out=offsets[1:])
    return Graph(n, _readonly(offsets), _readonly(cols), _readonly(vals))


def build_graph(n: int, edges: Iterable) -> Graph:
    """Build a :class:`Graph` on nodes ``0..n-1`` from ``(u, v, w)`` triples.

    Pairs may also be given as ``(u, v)``, in which case the weight is 1.
    """
    edges = list(edges)
    if not edges:
        return from_arrays(n, [], [], [])
    arr = [tuple(e) for e in edges]
    u = [e[0] for e in arr]
    v = [e[1] for e in arr]
    w = [e[2] if len(e) > 2 else 1.0 for e in arr]
    for i, (a, b) in enumerate(zip(u, v)):
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"edge #{i} {arr[i]}: node index out of range for n={n}")
    return from_arrays(n, u, v, w)


def laplacian_apply(g: Graph, x) -> np.ndarray:
    """Return ``L x`` using only the sparse adjacency."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise ValueError(f"vector has shape {x.shape}, expected ({g.n},)")
    return g.degrees * x - g.adjacency @ x


def weighted_degrees(g: Graph) -> np.ndarray:
    return g.degrees.copy()


def connected_components(g: Graph) -> ComponentLabeling:
    count, raw = _cc(g.adjacency, directed=False)
    # relabel so component ids follow the smallest node id in each component
    _, first = np.unique(raw, return_index=True)
    remap = np.empty(count, dtype=np.int64)
    remap[np.argsort(first)] = np.arange(count)
    label = remap[raw]
    sizes = np.bincount(label, minlength=count)
    return ComponentLabeling(_readonly(label), int(count), _readonly(sizes))
