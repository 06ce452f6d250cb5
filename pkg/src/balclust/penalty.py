"""Cluster-size balance penalty (exclusive lasso of a hard assignment) in exact integers."""

from __future__ import annotations

import numpy as np


def _checked_sizes(sizes) -> np.ndarray:
    arr = np.asarray(sizes, dtype=np.int64)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("sizes must be a non-empty 1-d integer vector")
    if (arr < 0).any():
        raise ValueError("sizes must be non-negative")
    return arr


def exclusive_lasso_penalty(sizes) -> int:
    """Sum of squared cluster sizes. Minimized over fixed n by even splits."""
    arr = _checked_sizes(sizes)
    return int((arr * arr).sum())


def penalty_delta(sizes, src: int, dst: int) -> int:
    """Exact change of exclusive_lasso_penalty when one sample moves src -> dst.

    (n_dst + 1)^2 + (n_src - 1)^2 - n_dst^2 - n_src^2 = 2*(n_dst - n_src) + 2.
    """
    arr = _checked_sizes(sizes)
    k = arr.size
    if not (0 <= src < k and 0 <= dst < k):
        raise ValueError(f"cluster index out of range for k={k}: src={src}, dst={dst}")
    if arr[src] == 0:
        raise ValueError(f"cluster {src} is empty, no sample to move")
    if src == dst:
        return 0
    return int(2 * (arr[dst] - arr[src]) + 2)


def most_balanced_value(n: int, k: int) -> int:
    """Minimum of exclusive_lasso_penalty over all size vectors summing to n.

    Attained exactly by the splits with max size - min size <= 1:
    r clusters of ceil(n/k) and k - r of floor(n/k), where r = n mod k.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    q, r = divmod(n, k)
    return r * (q + 1) ** 2 + (k - r) * q**2
