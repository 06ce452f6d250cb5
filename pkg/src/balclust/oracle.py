"""Small-instance brute-force oracles.

Everything here re-derives its answer by enumeration and deliberately shares no
evaluation code with the fitting modules or metrics, so tests can confront the
fast paths with an independent ground truth.
"""

from __future__ import annotations

import itertools

import numpy as np

from .affinity import AffinityMatrix
from .data import Assignment, DataMatrix

_CHUNK = 8192


def _enumerate_codes(n: int, k: int, max_states: int):
    """Yield (codes, digits) chunks covering all k**n assignments in lexicographic order."""
    states = k**n
    if states > max_states:
        raise ValueError(
            f"k**n = {states} exceeds the enumeration budget of {max_states}"
        )
    base = k ** np.arange(n - 1, -1, -1, dtype=np.int64)  # sample 0 most significant
    for lo in range(0, states, _CHUNK):
        codes = np.arange(lo, min(states, lo + _CHUNK), dtype=np.int64)
        yield codes, (codes[:, None] // base[None, :]) % k


def exhaustive_kmeans_optimum(
    X: DataMatrix, k: int, gamma: float, max_states: int = 1_000_000
) -> tuple[Assignment, float]:
    """Global minimum of the size-penalized k-means objective by full enumeration.

    Centroids are the per-cluster means (the exact minimizer for a fixed
    assignment, so enumerating assignments covers the joint problem). Ties keep
    the lexicographically smallest assignment.
    """
    V = X.values
    n = X.n_samples
    best_total = np.inf
    best_digits = None
    eye = np.arange(k)
    for _, digits in _enumerate_codes(n, k, max_states):
        F = (digits[:, :, None] == eye).astype(np.float64)  # (chunk, n, k)
        counts = F.sum(axis=1)
        means = np.einsum("dn,cnk->cdk", V, F) / np.maximum(counts[:, None, :], 1.0)
        own = np.einsum("cdk,cnk->cdn", means, F)  # each sample's cluster mean
        fit = ((V[None, :, :] - own) ** 2).sum(axis=(1, 2))
        total = fit + gamma * (counts**2).sum(axis=1)
        j = int(np.argmin(total))  # first hit wins inside the chunk
        if total[j] < best_total:
            best_total = float(total[j])
            best_digits = digits[j].copy()
    return Assignment(best_digits, k), best_total


def exhaustive_mincut_optimum(
    A: AffinityMatrix, k: int, gamma: float, max_states: int = 1_000_000
) -> tuple[Assignment, float]:
    """Global maximum of within-cluster weight minus gamma * sum of squared sizes."""
    W = A.weights
    n = A.n_samples
    best_total = -np.inf
    best_digits = None
    eye = np.arange(k)
    for _, digits in _enumerate_codes(n, k, max_states):
        F = (digits[:, :, None] == eye).astype(np.float64)
        within = np.einsum("cik,ij,cjk->c", F, W, F, optimize=True)
        counts = F.sum(axis=1)
        total = within - gamma * (counts**2).sum(axis=1)
        j = int(np.argmax(total))
        if total[j] > best_total:
            best_total = float(total[j])
            best_digits = digits[j].copy()
    return Assignment(best_digits, k), best_total


def brute_force_accuracy(pred: Assignment, truth: Assignment) -> float:
    """Matched accuracy by trying every injective label mapping (<= 6 labels a side).

    Pure-python counting on purpose: no contingency/assignment-solver code is
    shared with the metrics module.
    """
    if pred.n_samples != truth.n_samples:
        raise ValueError("pred and truth must cover the same samples")
    pred_ids = sorted(set(int(v) for v in pred.labels))
    truth_ids = sorted(set(int(v) for v in truth.labels))
    if len(pred_ids) > 6 or len(truth_ids) > 6:
        raise ValueError("brute-force matching is limited to 6 labels per side")

    counts: dict[tuple[int, int], int] = {}
    for p, t in zip(pred.labels, truth.labels):
        counts[(int(p), int(t))] = counts.get((int(p), int(t)), 0) + 1

    # dummy targets (None) let extra predicted labels stay unmatched
    targets = truth_ids + [None] * max(0, len(pred_ids) - len(truth_ids))
    best = 0
    for chosen in itertools.permutations(targets, len(pred_ids)):
        matched = sum(
            counts.get((p, t), 0) for p, t in zip(pred_ids, chosen) if t is not None
        )
        best = max(best, matched)
    return best / pred.n_samples
