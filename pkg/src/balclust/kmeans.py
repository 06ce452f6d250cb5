"""Balance-regularized k-means by coordinate descent on a hard indicator matrix.

Objective: ||X - H F^T||_F^2 + gamma * sum_k n_k^2, minimized by alternating
exact centroid updates with sequential single-row reassignment sweeps. Every
step is non-increasing, so the recorded objective trace descends monotonically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Assignment, DataMatrix, init_assignment
from .penalty import exclusive_lasso_penalty


@dataclass(frozen=True)
class KmeansConfig:
    gamma: float = 0.0
    rel_tol: float = 1e-8
    max_outer_iters: int = 300
    max_sweeps_per_update: int = 100
    init_mode: str = "uniform_random"
    seed: int = 0

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.rel_tol < 0:
            raise ValueError(f"rel_tol must be >= 0, got {self.rel_tol}")
        if self.max_outer_iters < 1 or self.max_sweeps_per_update < 1:
            raise ValueError("iteration caps must be >= 1")


@dataclass(frozen=True)
class TraceRecord:
    """Objective value after one outer iteration; total == fit + penalty."""

    iteration: int
    fit: float
    penalty: float
    total: float


@dataclass(frozen=True)
class KmeansResult:
    assignment: Assignment
    centroids: np.ndarray
    trace: tuple[TraceRecord, ...]
    iterations: int
    converged: bool


def kmeans_objective(
    X: DataMatrix, a: Assignment, H: np.ndarray, gamma: float
) -> tuple[float, float, float]:
    """Return (fit, penalty, total): squared deviations plus weighted size squares."""
    if a.n_samples != X.n_samples:
        raise ValueError("assignment length must match the number of samples")
    if H.shape != (X.n_features, a.n_clusters):
        raise ValueError(f"centroids must have shape (d, k), got {H.shape}")
    fit = float(((X.values - H[:, a.labels]) ** 2).sum())
    pen = gamma * exclusive_lasso_penalty(a.sizes())
    return fit, pen, fit + pen


def update_centroids(X: DataMatrix, a: Assignment) -> np.ndarray:
    """Per-cluster means.

    An empty cluster is re-seeded to the sample farthest from its currently
    assigned centroid (ties: lowest sample index; several empties take distinct
    samples in ascending cluster order). Re-seeding moves no samples, so the
    fit term cannot increase.
    """
    if a.n_samples != X.n_samples:
        raise ValueError("assignment length must match the number of samples")
    d, k = X.n_features, a.n_clusters
    sizes = a.sizes()
    H = np.zeros((d, k))
    for c in range(k):
        if sizes[c] > 0:
            H[:, c] = X.values[:, a.labels == c].mean(axis=1)
    empties = np.flatnonzero(sizes == 0)
    if empties.size:
        dist = ((X.values - H[:, a.labels]) ** 2).sum(axis=0)
        order = iter(np.argsort(-dist, kind="stable"))  # stable: ties by lowest index
        for c in empties:
            try:
                H[:, c] = X.values[:, next(order)]
            except StopIteration:
                raise ValueError("more empty clusters than samples to re-seed from") from None
    return H


def sweep_rows(
    X: DataMatrix, a: Assignment, H: np.ndarray, gamma: float
) -> tuple[Assignment, int]:
    """One pass over all rows in ascending order, each moved to its argmin cluster.

    Row i pays ||x_i - h_c||^2 + gamma * (2 * m_c + 1) for cluster c, where m_c
    counts cluster c's members excluding row i under the partially updated
    assignment. Ties go to the lowest cluster index. Returns the new assignment
    and how many labels changed.
    """
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    labels = a.labels.copy()
    sizes = a.sizes().astype(np.float64)
    # squared distances row-by-cluster; computed once since H is fixed all sweep
    dists = ((X.values[:, :, None] - H[:, None, :]) ** 2).sum(axis=0)
    changed = 0
    for i in range(labels.size):
        cur = labels[i]
        sizes[cur] -= 1.0
        best = int(np.argmin(dists[i] + gamma * (2.0 * sizes + 1.0)))
        sizes[best] += 1.0
        if best != cur:
            labels[i] = best
            changed += 1
    return Assignment(labels, a.n_clusters), changed


def fit_balanced_kmeans(
    X: DataMatrix, k: int, cfg: KmeansConfig = KmeansConfig(), init: Assignment | None = None
) -> KmeansResult:
    """Alternate update_centroids and row sweeps until the objective settles.

    Stops when a full outer iteration changes no label, when the relative
    decrease drops below cfg.rel_tol, or at cfg.max_outer_iters. The final
    assignment is sweep-stable against the returned centroids, i.e. no single
    row move lowers the objective.
    """
    if not 1 <= k <= X.n_samples:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={X.n_samples}")
    if init is None:
        a = init_assignment(X.n_samples, k, cfg.init_mode, cfg.seed)
    else:
        if init.n_samples != X.n_samples or init.n_clusters != k:
            raise ValueError("init assignment does not match the data or k")
        a = init

    trace: list[TraceRecord] = []
    prev_total = None
    converged = False
    iterations = 0
    for it in range(1, cfg.max_outer_iters + 1):
        H = update_centroids(X, a)
        iterations = it
        changed_total = 0
        for _ in range(cfg.max_sweeps_per_update):
            a, changed = sweep_rows(X, a, H, cfg.gamma)
            changed_total += changed
            if changed == 0:
                break
        fit, pen, total = kmeans_objective(X, a, H, cfg.gamma)
        trace.append(TraceRecord(it, fit, pen, total))
        if changed_total == 0:
            converged = True
            break
        if prev_total is not None and prev_total - total < cfg.rel_tol * max(1.0, abs(prev_total)):
            converged = True
            break
        prev_total = total
    return KmeansResult(a, H, tuple(trace), iterations, converged)
