"""Balance-regularized graph clustering by monotone trace ascent.

Maximizes Tr(F^T (rho*I + A - gamma*11^T) F) over hard indicator matrices F by
iterating row-wise argmax of the score matrix (rho*I + A - gamma*11^T) F. With
rho large enough to make the quadratic form positive definite, every sweep is
non-decreasing, and maximizing it is the same as minimizing the size-penalized
cut of A.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .affinity import AffinityMatrix, build_affinity
from .data import Assignment, DataMatrix, init_assignment
from .penalty import exclusive_lasso_penalty

# two assignments with trace values this close count as a plateau (stops 2-cycles)
PLATEAU_REL_TOL = 1e-12

# above this size the smallest eigenvalue comes from Lanczos instead of a dense solve
_DENSE_EIG_LIMIT = 1500


@dataclass(frozen=True)
class MincutConfig:
    gamma: float = 0.0
    max_iters: int = 300
    rho_margin: float = 1.0
    scale: float | str = "self"
    init_mode: str = "uniform_random"
    seed: int = 0
    repair_empty: bool = False

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.rho_margin <= 0:
            raise ValueError(f"rho_margin must be > 0, got {self.rho_margin}")


@dataclass(frozen=True)
class MincutTraceRecord:
    """State after one update; shifted = total + rho*n is the ascending quantity."""

    iteration: int
    shifted: float
    within: float
    penalty: float
    total: float


@dataclass(frozen=True)
class MincutResult:
    assignment: Assignment
    trace: tuple[MincutTraceRecord, ...]
    rho: float
    within: float
    penalty: float
    total: float
    iterations: int
    converged: bool


def _lambda_min(W: np.ndarray, gamma: float) -> float:
    """Smallest eigenvalue of A - gamma*11^T without materializing 11^T twice."""
    n = W.shape[0]
    if n <= _DENSE_EIG_LIMIT:
        return float(np.linalg.eigvalsh(W - gamma)[0])
    from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

    op = LinearOperator(
        (n, n), matvec=lambda v: W @ v - gamma * v.sum(), dtype=np.float64
    )
    try:
        return float(eigsh(op, k=1, which="SA", return_eigenvectors=False)[0])
    except ArpackNoConvergence:
        return float(np.linalg.eigvalsh(W - gamma)[0])


def select_rho(A: AffinityMatrix, gamma: float, margin: float = 1.0) -> float:
    """Smallest diagonal shift certifying rho*I + A - gamma*11^T positive definite.

    rho = margin + max(0, -lambda_min(A - gamma*11^T)). Any rho past the
    positive-definite threshold keeps the ascent monotone, but every extra unit
    also rewards rows for keeping their current label, so the tightest safe
    shift is the one that still lets the update move.
    """
    if gamma < 0:
        raise ValueError(f"gamma must be >= 0, got {gamma}")
    if margin <= 0:
        raise ValueError(f"margin must be > 0, got {margin}")
    return margin + max(0.0, -_lambda_min(A.weights, gamma))


def compute_scores(A: AffinityMatrix, a: Assignment, rho: float, gamma: float) -> np.ndarray:
    """Score matrix (rho*I + A - gamma*11^T) F, shape (n, k).

    Column c is rho*q_c + A q_c - gamma*n_c*1, assembled from cluster sizes so
    the rank-one 11^T is never materialized.
    """
    if a.n_samples != A.n_samples:
        raise ValueError("assignment length must match the affinity size")
    S = A.weights @ a.onehot()
    S[np.arange(a.n_samples), a.labels] += rho
    S -= gamma * a.sizes().astype(np.float64)
    return S


def argmax_assign(scores: np.ndarray) -> Assignment:
    """Row-wise argmax; ties go to the lowest cluster index."""
    return Assignment(np.argmax(scores, axis=1), scores.shape[1])


def mincut_objective(A: AffinityMatrix, a: Assignment, gamma: float) -> tuple[float, float, float]:
    """(within, penalty, total): kept weight, gamma-weighted size squares, difference.

    total is reported without the rho*n shift, so gamma=0 reduces it to the
    plain within-cluster weight.
    """
    if a.n_samples != A.n_samples:
        raise ValueError("assignment length must match the affinity size")
    F = a.onehot()
    within = float(((A.weights @ F) * F).sum())
    pen = gamma * exclusive_lasso_penalty(a.sizes())
    return within, pen, within - pen


def _repair_empty(A: AffinityMatrix, a: Assignment, rho: float, gamma: float) -> Assignment:
    """Move the weakest-margin point into each empty cluster (post-hoc, optional)."""
    labels = a.labels.copy()
    sizes = a.sizes()
    for c in np.flatnonzero(sizes == 0):
        S = compute_scores(A, Assignment(labels, a.n_clusters), rho, gamma)
        donors = np.flatnonzero(sizes[labels] >= 2)  # never empty another cluster
        margins = S[donors, labels[donors]] - S[donors, c]
        pick = donors[int(np.argmin(margins))]
        sizes[labels[pick]] -= 1
        labels[pick] = c
        sizes[c] += 1
    return Assignment(labels, a.n_clusters)


def fit_balanced_mincut(
    X: DataMatrix,
    k: int,
    k_neighbors: int = 5,
    cfg: MincutConfig = MincutConfig(),
    init: Assignment | None = None,
) -> MincutResult:
    """Build the kNN affinity for X and ascend the shifted trace objective.

    Stops when an update leaves the assignment unchanged, when the trace value
    plateaus (relative gain below PLATEAU_REL_TOL, which also breaks ties that
    would otherwise cycle), or at cfg.max_iters. Empty clusters are legal and
    only warned about; cfg.repair_empty fills each one post-hoc with the point
    whose current label is weakest.
    """
    if not 1 <= k <= X.n_samples:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={X.n_samples}")
    A = build_affinity(X, k_neighbors, scale=cfg.scale)
    return _fit_on_affinity(A, k, cfg, init)


def _fit_on_affinity(
    A: AffinityMatrix, k: int, cfg: MincutConfig, init: Assignment | None = None
) -> MincutResult:
    """Ascent loop on a prebuilt affinity (exposed for graph-level callers)."""
    n = A.n_samples
    rho = select_rho(A, cfg.gamma, cfg.rho_margin)
    if init is None:
        a = init_assignment(n, k, cfg.init_mode, cfg.seed)
    else:
        if init.n_samples != n or init.n_clusters != k:
            raise ValueError("init assignment does not match the affinity or k")
        a = init

    within, pen, total = mincut_objective(A, a, cfg.gamma)
    shifted = total + rho * n
    trace = [MincutTraceRecord(0, shifted, within, pen, total)]
    converged = False
    iterations = 0
    for it in range(1, cfg.max_iters + 1):
        iterations = it
        proposal = argmax_assign(compute_scores(A, a, rho, cfg.gamma))
        if np.array_equal(proposal.labels, a.labels):
            converged = True
            break
        a = proposal
        within, pen, total = mincut_objective(A, a, cfg.gamma)
        new_shifted = total + rho * n
        trace.append(MincutTraceRecord(it, new_shifted, within, pen, total))
        if new_shifted - shifted <= PLATEAU_REL_TOL * max(1.0, abs(shifted)):
            converged = True
            shifted = new_shifted
            break
        shifted = new_shifted

    empties = int((a.sizes() == 0).sum())
    if empties:
        warnings.warn(
            f"balanced min-cut converged with {empties} empty cluster(s)",
            RuntimeWarning,
            stacklevel=2,
        )
        if cfg.repair_empty:
            a = _repair_empty(A, a, rho, cfg.gamma)
            within, pen, total = mincut_objective(A, a, cfg.gamma)
    return MincutResult(a, tuple(trace), rho, within, pen, total, iterations, converged)
