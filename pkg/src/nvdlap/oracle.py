"""Dense pseudoinverse of the Laplacian, the exact reference for every solver."""

from __future__ import annotations

import warnings

import numpy as np

from .graph import Graph

DENSE_CAP = 20_000


def pinv_laplacian(g: Graph, max_nodes: int = DENSE_CAP) -> np.ndarray:
    """Moore-Penrose pseudoinverse of ``L`` through its eigendecomposition.

    Eigenvalues at or below ``n * eps * lambda_max`` are treated as zero, so
    disconnected graphs get one null vector per component.

    Raises
    ------
    ValueError
        If ``g.n`` exceeds ``max_nodes``; the dense matrix needs ``8 n^2``
        bytes.
    """
    if g.n > max_nodes:
        raise ValueError(
            f"refusing to densify a {g.n}-node Laplacian: above the cap of {max_nodes} nodes"
        )
    lap = g.laplacian.toarray()
    lam, vec = np.linalg.eigh(lap)
    del lap
    cutoff = g.n * np.finfo(float).eps * max(lam[-1], 0.0)
    keep = lam > cutoff
    vec = vec[:, keep]
    vec *= 1.0 / np.sqrt(lam[keep])
    pinv = vec @ vec.T
    del vec
    # gemm output can be asymmetric in the last ulp
    pinv += pinv.T
    pinv *= 0.5
    return pinv


def _clamped_sqrt(q: float, scale: float) -> float:
    if q < 0.0:
        if q < -1e-12 * scale:
            warnings.warn(
                f"quadratic form {q:.3e} is negative beyond round-off; clamping to 0",
                RuntimeWarning,
                stacklevel=3,
            )
        q = 0.0
    return float(np.sqrt(q))


def ge_distance_exact(g: Graph, a, b, pinv: np.ndarray | None = None) -> float:
    """``sqrt((a - b)^T L^+ (a - b))`` with a dense pseudoinverse.

    Pass ``pinv`` to reuse a previously computed :func:`pinv_laplacian`.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != (g.n,) or b.shape != (g.n,):
        raise ValueError(f"node vectors must have shape ({g.n},), got {a.shape} and {b.shape}")
    y = a - b
    if not y.any():
        return 0.0
    if pinv is None:
        pinv = pinv_laplacian(g)
    return _clamped_sqrt(float(y @ (pinv @ y)), float(y @ y))
