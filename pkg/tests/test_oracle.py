"""The brute-force references themselves, cross-checked against plain-loop evaluations."""

import itertools

import numpy as np
import pytest

from balclust import (
    AffinityMatrix,
    Assignment,
    DataMatrix,
    brute_force_accuracy,
    exclusive_lasso_penalty,
    exhaustive_kmeans_optimum,
    exhaustive_mincut_optimum,
    mincut_objective,
)


def test_kmeans_optimum_two_pairs():
    X = DataMatrix(np.array([[0.0, 1.0, 10.0, 11.0]]))
    best, total = exhaustive_kmeans_optimum(X, 2, gamma=0.0)
    assert total == 1.0
    assert best.labels.tolist() in ([0, 0, 1, 1],)  # lexicographic winner starts at 0


def test_kmeans_optimum_huge_gamma_balances():
    X = DataMatrix(np.array([[0.0, 1.0, 10.0, 11.0]]))
    best, _ = exhaustive_kmeans_optimum(X, 2, gamma=1e6)
    assert sorted(np.bincount(best.labels, minlength=2).tolist()) == [2, 2]


def test_kmeans_optimum_single_point():
    X = DataMatrix(np.array([[3.5]]))
    _, total = exhaustive_kmeans_optimum(X, 1, gamma=0.0)
    assert total == 0.0


def test_kmeans_optimum_matches_plain_loops():
    rng = np.random.default_rng(17)
    for _ in range(5):
        n, k = 5, 2
        X = DataMatrix(rng.normal(size=(2, n)))
        gamma = float(rng.uniform(0, 2))
        best = None
        for assign in itertools.product(range(k), repeat=n):
            arr = np.array(assign)
            fit = 0.0
            for c in range(k):
                members = X.values[:, arr == c]
                if members.shape[1]:
                    fit += ((members - members.mean(axis=1, keepdims=True)) ** 2).sum()
            value = fit + gamma * sum(int((arr == c).sum()) ** 2 for c in range(k))
            if best is None or value < best[1] - 1e-15:
                best = (assign, value)
        got_a, got_total = exhaustive_kmeans_optimum(X, k, gamma)
        assert got_total == pytest.approx(best[1], rel=1e-12)


def test_mincut_optimum_pair_frozen_values():
    A = AffinityMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    best, total = exhaustive_mincut_optimum(A, 2, gamma=0.0)
    assert total == 2.0
    assert best.labels.tolist() == [0, 0]

    best, total = exhaustive_mincut_optimum(A, 2, gamma=10.0)
    assert best.labels.tolist() == [0, 1]
    assert total == -20.0
    # losing candidate evaluated directly: together scores 2 - 10 * 4 = -38
    _, _, unsplit = mincut_objective(A, Assignment.from_labels([0, 0], 2), 10.0)
    assert unsplit == -38.0


def test_mincut_optimum_zero_matrix_balances():
    A = AffinityMatrix(np.zeros((4, 4)))
    best, _ = exhaustive_mincut_optimum(A, 2, gamma=1.0)
    assert sorted(np.bincount(best.labels, minlength=2).tolist()) == [2, 2]


def test_mincut_optimum_lexicographic_tie():
    A = AffinityMatrix(np.zeros((2, 2)))
    best, total = exhaustive_mincut_optimum(A, 2, gamma=0.0)
    assert best.labels.tolist() == [0, 0]
    assert total == 0.0


def test_mincut_optimum_matches_plain_loops():
    rng = np.random.default_rng(18)
    for _ in range(5):
        n, k = 5, 2
        raw = rng.uniform(0, 1, size=(n, n))
        W = np.minimum(raw, raw.T)
        np.fill_diagonal(W, 0.0)
        A = AffinityMatrix(W)
        gamma = float(rng.uniform(0, 1))
        best = None
        for assign in itertools.product(range(k), repeat=n):
            arr = np.array(assign)
            within = sum(
                W[i, j]
                for i in range(n)
                for j in range(n)
                if arr[i] == arr[j]
            )
            value = within - gamma * sum(int((arr == c).sum()) ** 2 for c in range(k))
            if best is None or value > best + 1e-15:
                best = value
        _, got_total = exhaustive_mincut_optimum(A, k, gamma)
        assert got_total == pytest.approx(best, rel=1e-12)


def test_enumeration_budget_enforced():
    X = DataMatrix(np.zeros((1, 30)))
    with pytest.raises(ValueError, match="budget"):
        exhaustive_kmeans_optimum(X, 3, gamma=0.0, max_states=10**6)
    A = AffinityMatrix(np.zeros((30, 30)))
    with pytest.raises(ValueError, match="budget"):
        exhaustive_mincut_optimum(A, 3, gamma=0.0, max_states=10**6)


def test_brute_force_accuracy_frozen_values():
    assert brute_force_accuracy(
        Assignment.from_labels([0, 1, 2, 2]), Assignment.from_labels([0, 0, 1, 1])
    ) == 0.75
    same = Assignment.from_labels([1, 0, 2, 1])
    assert brute_force_accuracy(same, same) == 1.0
    assert brute_force_accuracy(
        Assignment.from_labels([0, 0, 0, 0]), Assignment.from_labels([0, 0, 1, 1])
    ) == 0.5


def test_brute_force_accuracy_label_cap():
    many = Assignment.from_labels(list(range(7)))
    with pytest.raises(ValueError):
        brute_force_accuracy(many, many)
