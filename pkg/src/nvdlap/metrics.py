"""Generalized Euclidean distance, effective resistance and polarization."""

from __future__ import annotations

import numpy as np

from .graph import Graph
from .oracle import _clamped_sqrt
from .solvers import SolveReport, SolverConfig, project_zero_mean, solve_lap


def ge_distance(g: Graph, a, b, method: str = "approx_chol",
                cfg: SolverConfig | None = None) -> tuple[float, SolveReport]:
    """Generalized Euclidean distance ``sqrt((a-b)^T L^+ (a-b))``.

    ``L^+ (a - b)`` is obtained from :func:`solve_lap`; no pseudoinverse is
    formed unless ``method="baseline"``. Returns the distance and the solver
    report (check ``report.converged``).
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != (g.n,) or b.shape != (g.n,):
        raise ValueError(f"node vectors must have shape ({g.n},), got {a.shape} and {b.shape}")
    y = a - b
    report = solve_lap(g, y, method, cfg)
    py = project_zero_mean(y, g.components)
    q = float(py @ report.x)
    return _clamped_sqrt(q, float(py @ py)), report


def effective_resistance(g: Graph, u: int, v: int, method: str = "approx_chol",
                         cfg: SolverConfig | None = None) -> float:
    """Effective resistance between nodes ``u`` and ``v``.

    Raises ``ValueError`` when the nodes lie in different components, where
    the resistance is infinite.
    """
    u, v = int(u), int(v)
    for node in (u, v):
        if not 0 <= node < g.n:
            raise IndexError(f"node {node} out of range for n={g.n}")
    if u == v:
        return 0.0
    label = g.components.label
    if label[u] != label[v]:
        raise ValueError(f"nodes {u} and {v} are in different components: resistance is infinite")
    ea = np.zeros(g.n)
    eb = np.zeros(g.n)
    ea[u] = 1.0
    eb[v] = 1.0
    d, _ = ge_distance(g, ea, eb, method, cfg)
    return d * d


def group_vectors(groups, n: int, normalize: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Indicator vectors of the two classes in ``groups``.

    ``groups`` holds a class id per node, negative for unlabeled nodes (or a
    :class:`~nvdlap.dataio.GroupLabels`). With ``normalize`` each indicator
    is divided by its class size.
    """
    labels = np.asarray(getattr(groups, "labels", groups))
    if labels.shape != (n,):
        raise ValueError(f"group labeling has shape {labels.shape}, expected ({n},)")
    classes = np.unique(labels[labels >= 0])
    if len(classes) != 2:
        raise ValueError(f"polarization needs exactly two non-empty classes, found {len(classes)}")
    vecs = []
    for c in classes:
        ind = (labels == c).astype(np.float64)
        vecs.append(ind / ind.sum() if normalize else ind)
    return vecs[0], vecs[1]


def polarization_score(g: Graph, groups, method: str = "approx_chol",
                       cfg: SolverConfig | None = None, normalize: bool = True) -> float:
    """Distance between the two sides' group vectors; unlabeled nodes are
    left out of both."""
    a, b = group_vectors(groups, g.n, normalize)
    return ge_distance(g, a, b, method, cfg)[0]
