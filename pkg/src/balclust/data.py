"""Data containers, CSV I/O, synthetic blobs, and assignment initialization."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

INIT_MODES = ("uniform_random", "balanced_random")


def _frozen_array(values, dtype):
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class DataMatrix:
    """Dataset with samples as columns: shape (d, n).

    CSV files on disk are row-per-sample; the loader transposes. All entries
    must be finite.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"data matrix must be 2-d, got shape {arr.shape}")
        d, n = arr.shape
        if d < 1 or n < 1:
            raise ValueError(f"data matrix needs d >= 1 and n >= 1, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("data matrix contains non-finite entries")
        object.__setattr__(self, "values", _frozen_array(arr, np.float64))

    @property
    def n_features(self) -> int:
        return self.values.shape[0]

    @property
    def n_samples(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class Assignment:
    """Hard cluster assignment: labels[i] in [0, n_clusters) for each sample."""

    labels: np.ndarray
    n_clusters: int

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1 or labels.size < 1:
            raise ValueError("labels must be a non-empty 1-d integer array")
        if self.n_clusters < 1:
            raise ValueError(f"n_clusters must be >= 1, got {self.n_clusters}")
        if labels.min() < 0 or labels.max() >= self.n_clusters:
            raise ValueError(
                f"labels must lie in [0, {self.n_clusters}), "
                f"got range [{labels.min()}, {labels.max()}]"
            )
        object.__setattr__(self, "labels", _frozen_array(labels, np.int64))

    @classmethod
    def from_labels(cls, labels, n_clusters: int | None = None) -> "Assignment":
        labels = np.asarray(labels, dtype=np.int64)
        if n_clusters is None:
            n_clusters = int(labels.max()) + 1 if labels.size else 1
        return cls(labels, n_clusters)

    @property
    def n_samples(self) -> int:
        return self.labels.size

    def sizes(self) -> np.ndarray:
        """Cluster sizes as an int64 vector of length n_clusters."""
        return np.bincount(self.labels, minlength=self.n_clusters)

    def onehot(self) -> np.ndarray:
        """Indicator matrix F of shape (n, K); exactly one 1.0 per row."""
        F = np.zeros((self.labels.size, self.n_clusters))
        F[np.arange(self.labels.size), self.labels] = 1.0
        return F


def cluster_sizes(assignment: Assignment) -> np.ndarray:
    return assignment.sizes()


def _parse_cell(cell: str, row: int, col: int) -> float:
    text = cell.strip()
    # float() accepts '1_0' and 'nan'; neither is valid numeric CSV content here.
    if not text or "_" in text:
        raise ValueError(f"row {row}, column {col}: cannot parse {cell!r} as a number")
    try:
        value = float(text)
    except ValueError:
        raise ValueError(
            f"row {row}, column {col}: cannot parse {cell!r} as a number"
        ) from None
    if not np.isfinite(value):
        raise ValueError(f"row {row}, column {col}: non-finite value {cell!r}")
    return value


def load_csv(
    path,
    label_column: int | None = None,
    has_header: bool = False,
) -> tuple[DataMatrix, Assignment | None]:
    """Load a row-per-sample CSV into a DataMatrix (and labels, if a column is named).

    Label cells may be arbitrary tokens; they are densified to 0..K-1 in order
    of first appearance, so truth files using labels like (2, 4, 6) or strings
    work unchanged. Errors name the offending row and column (1-based).
    """
    with open(path, newline="", encoding="utf-8") as fh:
        raw = [(idx + 1, row) for idx, row in enumerate(csv.reader(fh)) if row]
    if has_header:
        raw = raw[1:]
    if not raw:
        raise ValueError(f"empty file: {path}")

    width = len(raw[0][1])
    for lineno, row in raw:
        if len(row) != width:
            raise ValueError(
                f"ragged row {lineno}: expected {width} cells, got {len(row)}"
            )
    col = label_column
    if col is not None:
        if col < 0:
            col += width
        if not 0 <= col < width:
            raise ValueError(f"label column {label_column} out of range for width {width}")
        if width < 2:
            raise ValueError("need at least one feature column besides the labels")

    features = []
    keys = {}
    labels = []
    for lineno, row in raw:
        feat = []
        for c, cell in enumerate(row):
            if c == col:
                key = cell.strip()
                if key not in keys:
                    keys[key] = len(keys)
                labels.append(keys[key])
            else:
                feat.append(_parse_cell(cell, lineno, c + 1))
        features.append(feat)

    X = DataMatrix(np.asarray(features, dtype=np.float64).T)
    if col is None:
        return X, None
    return X, Assignment(np.asarray(labels), len(keys))


def save_csv(X: DataMatrix, path, labels=None) -> None:
    """Write samples as CSV rows at full precision (repr round-trip).

    If labels are given (an Assignment or an integer sequence) they are
    appended as a final integer column, so load_csv(path, label_column=-1)
    restores both parts exactly.
    """
    if isinstance(labels, Assignment):
        labels = labels.labels
    if labels is not None and len(labels) != X.n_samples:
        raise ValueError("labels length must match the number of samples")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        for i in range(X.n_samples):
            row = [repr(float(v)) for v in X.values[:, i]]
            if labels is not None:
                row.append(str(int(labels[i])))
            writer.writerow(row)


def _spaced_centers(rng: np.random.Generator, k: int, d: int, separation: float) -> np.ndarray:
    """k points with pairwise distance >= separation, deterministic in rng state."""
    box = max(separation, 1.0) * k
    while True:
        candidates = rng.uniform(-box, box, size=(64 * k, d))
        chosen: list[np.ndarray] = []
        for cand in candidates:
            if all(np.sqrt(((cand - c) ** 2).sum()) >= separation for c in chosen):
                chosen.append(cand)
                if len(chosen) == k:
                    return np.asarray(chosen)
        box *= 2.0  # box too tight for this separation, widen and redraw


def generate_blobs(
    k: int,
    per_cluster: int,
    d: int,
    spread: float,
    separation: float,
    seed: int = 0,
) -> tuple[DataMatrix, Assignment]:
    """Exactly balanced Gaussian blobs: k centers, per_cluster samples each.

    Centers are placed with pairwise distance >= separation; samples are
    isotropic Gaussians with standard deviation `spread` around their center.
    Identical seeds give bit-identical output.
    """
    if k < 1 or per_cluster < 1 or d < 1:
        raise ValueError("k, per_cluster, and d must all be >= 1")
    if spread < 0 or separation < 0:
        raise ValueError("spread and separation must be >= 0")
    rng = np.random.default_rng(seed)
    centers = _spaced_centers(rng, k, d, separation)
    blocks = [
        centers[c][:, None] + rng.normal(0.0, spread, size=(d, per_cluster))
        for c in range(k)
    ]
    X = DataMatrix(np.concatenate(blocks, axis=1))
    labels = Assignment(np.repeat(np.arange(k), per_cluster), k)
    return X, labels


def init_assignment(n: int, k: int, mode: str = "uniform_random", seed: int = 0) -> Assignment:
    """Seeded initial assignment with no empty clusters.

    uniform_random: iid labels, then one random donor point is moved into each
    empty cluster (donors come from clusters of size >= 2, so no new empties).
    balanced_random: a seeded permutation of the most balanced label multiset.
    """
    if n < k:
        raise ValueError(f"need n >= k to cover every cluster, got n={n}, k={k}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    rng = np.random.default_rng(seed)
    if mode == "uniform_random":
        labels = rng.integers(0, k, size=n)
        sizes = np.bincount(labels, minlength=k)
        for empty in np.flatnonzero(sizes == 0):
            donors = np.flatnonzero(sizes[labels] >= 2)
            pick = donors[rng.integers(donors.size)]
            sizes[labels[pick]] -= 1
            labels[pick] = empty
            sizes[empty] += 1
    elif mode == "balanced_random":
        q, r = divmod(n, k)
        counts = [q + 1] * r + [q] * (k - r)
        labels = rng.permutation(np.repeat(np.arange(k), counts))
    else:
        raise ValueError(f"unknown init mode {mode!r}, expected one of {INIT_MODES}")
    return Assignment(labels, k)
