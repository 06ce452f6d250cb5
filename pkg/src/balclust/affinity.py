"""kNN Gaussian affinity graphs and cut-value bookkeeping (dense n x n storage)."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .data import Assignment, DataMatrix


@dataclass(frozen=True)
class AffinityMatrix:
    """Symmetric non-negative weights with zero diagonal, entries in [0, 1].

    neighbor_count records the k the graph was built with (None for matrices
    loaded from external files).
    """

    weights: np.ndarray
    neighbor_count: int | None = None

    def __post_init__(self):
        W = np.asarray(self.weights, dtype=np.float64)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise ValueError(f"affinity must be square, got shape {W.shape}")
        if not np.all(np.isfinite(W)):
            raise ValueError("affinity contains non-finite entries")
        if not np.array_equal(W, W.T):
            raise ValueError("affinity must be exactly symmetric")
        if np.any(np.diagonal(W) != 0.0):
            raise ValueError("affinity diagonal must be zero")
        if W.min() < 0.0 or W.max() > 1.0:
            raise ValueError("affinity entries must lie in [0, 1]")
        W = W.copy()
        W.setflags(write=False)
        object.__setattr__(self, "weights", W)

    @property
    def n_samples(self) -> int:
        return self.weights.shape[0]


def _pairwise_sq(X: DataMatrix) -> np.ndarray:
    """Exact squared Euclidean distances, (x-y)^2 form so ties stay symmetric."""
    V = X.values
    d, n = V.shape
    out = np.empty((n, n))
    step = max(1, int(2e7) // max(1, d * n))  # bound the (d, n, chunk) temporary
    for lo in range(0, n, step):
        hi = min(n, lo + step)
        out[lo:hi] = ((V[:, None, lo:hi] - V[:, :, None]) ** 2).sum(axis=0).T
    return out


def _knn_from_sq(D2: np.ndarray, k: int) -> np.ndarray:
    n = D2.shape[0]
    if not 1 <= k <= n - 1:
        raise ValueError(f"k_neighbors must be in [1, n-1], got k={k}, n={n}")
    D = D2.copy()
    np.fill_diagonal(D, np.inf)  # self is never a neighbor
    # stable sort: distance ties resolved by lowest index
    return np.argsort(D, axis=1, kind="stable")[:, :k]


def knn_sets(X: DataMatrix, k: int) -> np.ndarray:
    """Indices of the k nearest neighbors per sample, shape (n, k)."""
    return _knn_from_sq(_pairwise_sq(X), k)


def build_affinity(
    X: DataMatrix,
    k_neighbors: int,
    scale: float | str = "self",
    symmetrize: str = "either",
) -> AffinityMatrix:
    """Gaussian kernel on kNN pairs: exp(-d_ij^2 / (delta_i * delta_j)).

    scale="self" sets delta_i to the distance from x_i to its k-th nearest
    neighbor (per-sample scaling); a positive float uses that single global
    delta everywhere. A sample whose k-th neighbor coincides with it gets the
    smallest positive delta observed; if every delta is zero the dataset is
    degenerate and an error is raised. symmetrize="either" keeps an edge when
    at least one endpoint selected the other (elementwise max); "mutual" keeps
    only edges selected from both sides.
    """
    if symmetrize not in ("either", "mutual"):
        raise ValueError(f"symmetrize must be 'either' or 'mutual', got {symmetrize!r}")
    D2 = _pairwise_sq(X)
    nbrs = _knn_from_sq(D2, k_neighbors)
    n = X.n_samples

    if scale == "self":
        delta = np.sqrt(D2[np.arange(n), nbrs[:, -1]])
        positive = delta[delta > 0.0]
        if positive.size == 0:
            raise ValueError("degenerate dataset: all points coincide")
        delta[delta == 0.0] = positive.min()
        denom = np.outer(delta, delta)
    else:
        delta = float(scale)
        if delta <= 0.0:
            raise ValueError(f"global delta must be > 0, got {delta}")
        denom = delta * delta

    raw = np.zeros((n, n))
    rows = np.repeat(np.arange(n), k_neighbors)
    cols = nbrs.ravel()
    if scale == "self":
        raw[rows, cols] = np.exp(-D2[rows, cols] / denom[rows, cols])
    else:
        raw[rows, cols] = np.exp(-D2[rows, cols] / denom)

    merge = np.maximum if symmetrize == "either" else np.minimum
    W = merge(raw, raw.T)
    np.fill_diagonal(W, 0.0)
    return AffinityMatrix(W, k_neighbors)


def degree_vector(A: AffinityMatrix) -> np.ndarray:
    return A.weights.sum(axis=1)


def cut_value(A: AffinityMatrix, a: Assignment) -> tuple[float, float]:
    """(within, cut): weight kept inside clusters and weight crossing them.

    Both terms are accumulated per cluster, so within + cut reproduces the
    total weight 1^T A 1 only up to float roundoff; that identity is a good
    consistency check.
    """
    if a.n_samples != A.n_samples:
        raise ValueError("assignment length must match the affinity size")
    deg = degree_vector(A)
    within = 0.0
    cut = 0.0
    for c in range(a.n_clusters):
        members = a.labels == c
        block = float(A.weights[np.ix_(members, members)].sum())
        within += block
        cut += float(deg[members].sum()) - block
    return within, cut


def save_affinity_csv(A: AffinityMatrix, path) -> None:
    """Dense weight dump for debugging, full repr precision."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for row in A.weights:
            writer.writerow([repr(float(v)) for v in row])


def load_affinity_csv(path, neighbor_count: int | None = None) -> AffinityMatrix:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [[float(cell) for cell in row] for row in csv.reader(fh) if row]
    if not rows:
        raise ValueError(f"empty file: {path}")
    return AffinityMatrix(np.asarray(rows), neighbor_count)
