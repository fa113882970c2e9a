from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..graph import ComponentLabeling, Graph

METHODS = ("baseline", "cg", "cg_jacobi", "aug_tree", "approx_chol")


@dataclass(frozen=True)
class SolverConfig:
    """Accuracy and iteration budget for a Laplacian solve.

    ``max_iters=None`` means ``10 n``. ``aug_extra=None`` means
    ``ceil(sqrt(n))`` off-tree edges for the augmented tree preconditioner.
    """

    rel_tolerance: float = 1e-10
    max_iters: int | None = None
    seed: int = 0
    aug_extra: int | None = None

    def __post_init__(self):
        if not self.rel_tolerance > 0:
            raise ValueError(f"rel_tolerance must be > 0, got {self.rel_tolerance}")
        if self.max_iters is not None and self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.aug_extra is not None and self.aug_extra < 0:
            raise ValueError(f"aug_extra must be >= 0, got {self.aug_extra}")

    def iteration_cap(self, n: int) -> int:
        return self.max_iters if self.max_iters is not None else 10 * n


@dataclass
class SolveReport:
    """Outcome of one solve. ``residual`` is ``||L x - b|| / ||b||`` for the
    projected right-hand side ``b``."""

    x: np.ndarray
    iterations: int
    residual: float
    wall_time: float
    method: str
    converged: bool


def project_zero_mean(y, comps: ComponentLabeling) -> np.ndarray:
    """Subtract the per-component mean so ``y`` sums to zero on every
    connected component."""
    y = np.asarray(y, dtype=np.float64)
    if y.shape != comps.label.shape:
        raise ValueError(f"vector has shape {y.shape}, expected {comps.label.shape}")
    means = np.bincount(comps.label, weights=y, minlength=comps.count) / comps.sizes
    return y - means[comps.label]


class Preconditioner:
    """Symmetric operator approximating ``L^+``.

    ``apply(r)`` evaluates ``P S(P r)`` where ``S`` is the wrapped solve and
    ``P`` the zero-mean projection, so the operator is symmetric on all of
    ``R^n`` and maps into the range of ``L``.
    """

    def __init__(self, name: str, solve: Callable[[np.ndarray], np.ndarray],
                 comps: ComponentLabeling, nnz: int = 0):
        self.name = name
        self._solve = solve
        self._comps = comps
        self.nnz = nnz

    def apply(self, r) -> np.ndarray:
        r = project_zero_mean(r, self._comps)
        return project_zero_mean(self._solve(r), self._comps)

    __call__ = apply

    def __repr__(self) -> str:
        return f"Preconditioner({self.name!r}, nnz={self.nnz})"
