"""Experiment runner: config validation, report schema, grid selection, serialization."""

import copy
import csv
import json

import numpy as np
import pytest

from balclust import (
    DEFAULT_GAMMA_GRID,
    DEFAULT_SEEDS,
    ExperimentConfig,
    emit_report,
    grid_search,
    load_dataset,
    run_experiment,
    save_csv,
    DataMatrix,
    Assignment,
)

BLOBS = (2, 6, 2, 0.05, 2.0)  # small separable instance: k, per, d, spread, sep


def blob_config(**overrides):
    defaults = dict(algorithm="balanced_kmeans", k=2, blobs=BLOBS, seeds=(0, 1, 2))
    defaults.update(overrides)
    return ExperimentConfig(**defaults)


def masked_json(report):
    report = copy.deepcopy(report)
    for block in report["blocks"]:
        for run in block["runs"]:
            run["wall_ms"] = 0.0
    return json.dumps(report, indent=2)


# -------------------------------------------------------------------- config


def test_config_requires_exactly_one_source(tmp_path):
    with pytest.raises(ValueError, match="exactly one"):
        ExperimentConfig(algorithm="balanced_kmeans", k=2)
    with pytest.raises(ValueError, match="exactly one"):
        ExperimentConfig(
            algorithm="balanced_kmeans", k=2, blobs=BLOBS, data_path=str(tmp_path / "x.csv")
        )


def test_config_validation_errors():
    with pytest.raises(ValueError):
        ExperimentConfig(algorithm="spectral", k=2, blobs=BLOBS)
    with pytest.raises(ValueError):
        blob_config(seeds=())
    with pytest.raises(ValueError):
        blob_config(gamma=-1.0)
    with pytest.raises(ValueError):
        blob_config(select_by="f1")
    with pytest.raises(ValueError):
        blob_config(out_format="xml")
    with pytest.raises(ValueError):
        blob_config(k=0)


def test_load_dataset_from_csv(tmp_path):
    rng = np.random.default_rng(0)
    X = DataMatrix(rng.normal(size=(2, 8)))
    labels = Assignment.from_labels([0, 0, 1, 1, 2, 2, 0, 1], 3)
    path = tmp_path / "data.csv"
    save_csv(X, path, labels=labels)
    cfg = ExperimentConfig(
        algorithm="balanced_kmeans", k=3, data_path=str(path), label_column=-1
    )
    X2, truth, desc = load_dataset(cfg)
    assert np.array_equal(X.values, X2.values)
    assert np.array_equal(labels.labels, truth.labels)
    assert desc["source"] == "csv" and desc["n"] == 8 and desc["n_features"] == 2


# --------------------------------------------------------------- run_experiment


def test_run_experiment_report_shape():
    report = run_experiment(blob_config(gamma=0.0))
    assert report["schema_version"] == 1
    cfg = report["config"]
    assert cfg["algorithm"] == "balanced_kmeans"
    assert cfg["gamma"] == 0.0 and cfg["gamma_grid"] is None
    assert cfg["seeds"] == [0, 1, 2]
    assert report["selected_gamma"] is None and report["sweep"] == []
    (block,) = report["blocks"]
    assert block["gamma"] == 0.0
    assert len(block["runs"]) == 3
    for run in block["runs"]:
        assert run["acc"] == 1.0  # separable blobs
        assert run["wall_ms"] >= 0.0
        assert run["trace"][-1][-1] == run["objective"]["total"]
        assert run["balance"]["perfectly_balanced"] is True


def test_run_experiment_aggregates_recomputable():
    report = run_experiment(blob_config(gamma=1e-2, seeds=tuple(range(5))))
    (block,) = report["blocks"]
    accs = [r["acc"] for r in block["runs"]]
    agg = block["aggregates"]
    assert agg["acc_mean"] == pytest.approx(np.mean(accs), abs=0)
    assert agg["acc_std"] == pytest.approx(np.std(accs), abs=0)
    pens = [r["balance"]["penalty_value"] for r in block["runs"]]
    assert agg["penalty_value_mean"] == pytest.approx(np.mean(pens), abs=0)


def test_run_experiment_without_labels(tmp_path):
    X = DataMatrix(np.random.default_rng(1).normal(size=(2, 10)))
    path = tmp_path / "unlabeled.csv"
    save_csv(X, path)
    cfg = ExperimentConfig(
        algorithm="balanced_kmeans", k=2, data_path=str(path), seeds=(0, 1)
    )
    report = run_experiment(cfg)
    (block,) = report["blocks"]
    for run in block["runs"]:
        assert run["acc"] is None and run["nmi"] is None
        assert run["balance"]["penalty_value"] > 0
    assert block["aggregates"]["acc_mean"] is None


def test_run_experiment_mincut_records_rho_and_warnings():
    cfg = blob_config(algorithm="balanced_mincut", k_neighbors=3, gamma=0.5)
    report = run_experiment(cfg)
    (block,) = report["blocks"]
    for run in block["runs"]:
        assert run["objective"]["rho"] > 0
        assert isinstance(run["warnings"], list)


# ------------------------------------------------------------------ grid_search


def test_grid_search_sweep_sorted_and_selected():
    report = grid_search(blob_config(gamma_grid=(1.0, 1e-6, 1e-2)))
    gammas = [entry["gamma"] for entry in report["sweep"]]
    assert gammas == sorted(gammas) == [1e-6, 1e-2, 1.0]
    # separable blobs: every gamma reaches ACC 1.0, tie resolves to smallest
    assert report["selected_gamma"] == 1e-6
    assert report["config"]["gamma_grid"] == [1e-6, 1e-2, 1.0]
    assert report["config"]["gamma"] is None
    assert len(report["blocks"]) == 3
    assert all(len(b["runs"]) == 3 for b in report["blocks"])


def test_grid_search_default_grid():
    report = grid_search(blob_config(seeds=(0,)))
    assert [e["gamma"] for e in report["sweep"]] == sorted(DEFAULT_GAMMA_GRID)


def test_grid_search_requires_labels(tmp_path):
    X = DataMatrix(np.zeros((1, 6)) + np.arange(6.0))
    path = tmp_path / "nolabel.csv"
    save_csv(X, path)
    cfg = ExperimentConfig(algorithm="balanced_kmeans", k=2, data_path=str(path))
    with pytest.raises(ValueError, match="labels"):
        grid_search(cfg)


def test_grid_search_selects_by_declared_metric():
    cfg = blob_config(
        blobs=(3, 8, 2, 0.6, 1.2), k=3, seeds=tuple(range(4)), select_by="nmi"
    )
    report = grid_search(cfg)
    best_nmi = max(e["nmi_mean"] for e in report["sweep"])
    expected = min(e["gamma"] for e in report["sweep"] if e["nmi_mean"] == best_nmi)
    assert report["selected_gamma"] == expected


def test_default_seed_list():
    assert DEFAULT_SEEDS == tuple(range(10))
    assert len(DEFAULT_GAMMA_GRID) == 7


# -------------------------------------------------------------------- emit


def test_emit_json_round_trip(tmp_path):
    report = run_experiment(blob_config())
    path = tmp_path / "report.json"
    emit_report(report, path, "json")
    text = path.read_text()
    assert text.endswith("\n")
    parsed = json.loads(text)
    assert parsed == json.loads(json.dumps(report))
    # re-emitting the parsed report is byte-stable
    emit_report(parsed, tmp_path / "again.json", "json")
    assert (tmp_path / "again.json").read_text() == text


def test_emit_csv_rows_and_precision(tmp_path):
    report = grid_search(blob_config(gamma_grid=(1e-6, 1e-2), seeds=(0, 1, 2)))
    path = tmp_path / "report.csv"
    emit_report(report, path, "csv")
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, data = rows[0], rows[1:]
    assert header == ["seed", "gamma", "acc", "nmi", "penalty", "iterations", "wall_ms"]
    assert len(data) == 2 * 3  # grid size x seeds
    run = report["blocks"][0]["runs"][0]
    assert float(data[0][2]) == run["acc"]
    assert data[0][1] == "1e-06"  # 12-significant-digit shortest form


def test_run_experiment_writes_configured_output(tmp_path):
    path = tmp_path / "auto.json"
    run_experiment(blob_config(out_path=str(path)))
    assert json.loads(path.read_text())["schema_version"] == 1


# ----------------------------------------------------------------- determinism


def test_reports_identical_across_invocations():
    cfg = blob_config(algorithm="balanced_mincut", k_neighbors=3, gamma_grid=(0.0, 1.0))
    assert masked_json(grid_search(cfg)) == masked_json(grid_search(cfg))
