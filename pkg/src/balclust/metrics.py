"""Clustering quality metrics: matched accuracy, NMI, and balance reporting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .data import Assignment
from .penalty import exclusive_lasso_penalty


def contingency_table(pred: Assignment, truth: Assignment) -> np.ndarray:
    """Count matrix C[p, t] = |{i : pred(i)=p and truth(i)=t}|."""
    if pred.n_samples != truth.n_samples:
        raise ValueError("pred and truth must cover the same samples")
    C = np.zeros((pred.n_clusters, truth.n_clusters), dtype=np.int64)
    np.add.at(C, (pred.labels, truth.labels), 1)
    return C


def accuracy(pred: Assignment, truth: Assignment) -> float:
    """Fraction of samples matched under the best one-to-one label mapping.

    The contingency table is zero-padded to square and the mapping maximizing
    the matched count is solved as an assignment problem, so the result is
    invariant under any relabeling of either side.
    """
    C = contingency_table(pred, truth)
    side = max(C.shape)
    padded = np.zeros((side, side), dtype=np.int64)
    padded[: C.shape[0], : C.shape[1]] = C
    rows, cols = linear_sum_assignment(padded, maximize=True)
    return float(padded[rows, cols].sum()) / pred.n_samples


def nmi(pred: Assignment, truth: Assignment) -> float:
    """Normalized mutual information with natural logs and 0*log(0) = 0.

    Zero-entropy convention: if both partitions are single clusters the score
    is 1.0; if exactly one is, 0.0.
    """
    C = contingency_table(pred, truth).astype(np.float64)
    n = float(pred.n_samples)
    p_row = C.sum(axis=1) / n
    p_col = C.sum(axis=0) / n
    h_pred = float(-(p_row[p_row > 0] * np.log(p_row[p_row > 0])).sum())
    h_truth = float(-(p_col[p_col > 0] * np.log(p_col[p_col > 0])).sum())
    if h_pred == 0.0 and h_truth == 0.0:
        return 1.0
    if h_pred == 0.0 or h_truth == 0.0:
        return 0.0
    # Partitions identical up to relabeling produce a bijective table (one
    # nonzero per row and column); the score is exactly 1 there, so return it
    # without the roundoff of evaluating MI and entropies separately.
    nonzero = C > 0
    if (nonzero.sum(axis=0) <= 1).all() and (nonzero.sum(axis=1) <= 1).all():
        return 1.0
    P = C / n
    mask = P > 0
    outer = np.outer(p_row, p_col)
    mi = float((P[mask] * np.log(P[mask] / outer[mask])).sum())
    return min(1.0, max(0.0, mi / np.sqrt(h_pred * h_truth)))


@dataclass(frozen=True)
class BalanceReport:
    penalty_value: int
    size_stddev: float
    perfectly_balanced: bool


def balance_report(a: Assignment) -> BalanceReport:
    """Size-square sum, population stddev of sizes, and the max-min <= 1 flag."""
    sizes = a.sizes()
    return BalanceReport(
        penalty_value=exclusive_lasso_penalty(sizes),
        size_stddev=float(np.std(sizes)),
        perfectly_balanced=bool(sizes.max() - sizes.min() <= 1),
    )
