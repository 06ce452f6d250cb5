"""Figure rendering for run reports."""

import json

from balclust import ExperimentConfig, grid_search, run_experiment
from balclust.plots import render_report_figures

BLOBS = (2, 6, 2, 0.05, 2.0)


def test_grid_report_renders_three_figures(tmp_path):
    cfg = ExperimentConfig(
        algorithm="balanced_kmeans", k=2, blobs=BLOBS, seeds=(0, 1), gamma_grid=(1e-4, 1e-2)
    )
    report = grid_search(cfg)
    out = tmp_path / "grid.json"
    paths = render_report_figures(report, out)
    names = sorted(p.split("/")[-1] for p in paths)
    assert names == ["grid_sensitivity.png", "grid_sizes.png", "grid_trace.png"]
    for p in paths:
        with open(p, "rb") as fh:
            assert fh.read(8).startswith(b"\x89PNG")


def test_single_gamma_report_skips_sensitivity(tmp_path):
    cfg = ExperimentConfig(
        algorithm="balanced_mincut", k=2, blobs=BLOBS, k_neighbors=3, seeds=(0,), gamma=0.5
    )
    report = run_experiment(cfg)
    paths = render_report_figures(report, tmp_path / "single.json")
    names = sorted(p.split("/")[-1] for p in paths)
    assert names == ["single_sizes.png", "single_trace.png"]


def test_rendering_is_idempotent(tmp_path):
    cfg = ExperimentConfig(
        algorithm="balanced_kmeans", k=2, blobs=BLOBS, seeds=(0,), gamma=0.0
    )
    report = run_experiment(cfg)
    out = tmp_path / "again.json"
    first = render_report_figures(report, out)
    second = render_report_figures(json.loads(json.dumps(report)), out)
    assert first == second
