"""Benchmark harness: seeded multi-run experiments, gamma grid search, reports.

Reports are deterministic given the config (byte-identical JSON apart from the
wall_ms fields), which makes them safe to diff across machines and commits.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, replace

import numpy as np

from .data import Assignment, DataMatrix, generate_blobs, load_csv
from .kmeans import KmeansConfig, fit_balanced_kmeans
from .metrics import accuracy, balance_report, nmi
from .mincut import MincutConfig, fit_balanced_mincut

SCHEMA_VERSION = 1
ALGORITHMS = ("balanced_kmeans", "balanced_mincut")
DEFAULT_GAMMA_GRID = (1e-6, 1e-4, 1e-2, 1.0, 1e2, 1e4, 1e6)
DEFAULT_SEEDS = tuple(range(10))
CSV_COLUMNS = ("seed", "gamma", "acc", "nmi", "penalty", "iterations", "wall_ms")


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: a dataset, an algorithm, gamma(s), and a seed list.

    Exactly one of data_path / blobs names the dataset. gamma drives
    run_experiment; gamma_grid (None means the default seven-point grid)
    drives grid_search.
    """

    algorithm: str
    k: int
    data_path: str | None = None
    label_column: int | None = None
    has_header: bool = False
    blobs: tuple[int, int, int, float, float] | None = None
    blob_seed: int = 0
    gamma: float = 0.0
    gamma_grid: tuple[float, ...] | None = None
    k_neighbors: int = 5
    scale: float | str = "self"
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    init_mode: str = "uniform_random"
    repair_empty: bool = False
    select_by: str = "acc"
    out_path: str | None = None
    out_format: str = "json"

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if (self.data_path is None) == (self.blobs is None):
            raise ValueError("exactly one of data_path and blobs must be given")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not self.seeds:
            raise ValueError("need at least one seed")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.select_by not in ("acc", "nmi"):
            raise ValueError(f"select_by must be 'acc' or 'nmi', got {self.select_by!r}")
        if self.out_format not in ("json", "csv"):
            raise ValueError(f"out_format must be 'json' or 'csv', got {self.out_format!r}")


def load_dataset(cfg: ExperimentConfig) -> tuple[DataMatrix, Assignment | None, dict]:
    """Materialize the configured dataset plus a JSON-friendly description."""
    if cfg.data_path is not None:
        X, truth = load_csv(cfg.data_path, cfg.label_column, cfg.has_header)
        desc = {
            "source": "csv",
            "path": str(cfg.data_path),
            "label_column": cfg.label_column,
        }
    else:
        kb, per, d, spread, sep = cfg.blobs
        X, truth = generate_blobs(kb, per, d, spread, sep, cfg.blob_seed)
        desc = {
            "source": "blobs",
            "k": int(kb),
            "per_cluster": int(per),
            "d": int(d),
            "spread": float(spread),
            "separation": float(sep),
            "seed": int(cfg.blob_seed),
        }
    desc["n"] = X.n_samples
    desc["n_features"] = X.n_features
    return X, truth, desc


def _single_run(
    X: DataMatrix, truth: Assignment | None, cfg: ExperimentConfig, gamma: float, seed: int
) -> dict:
    start = time.perf_counter()
    if cfg.algorithm == "balanced_kmeans":
        res = fit_balanced_kmeans(
            X, cfg.k, KmeansConfig(gamma=gamma, init_mode=cfg.init_mode, seed=seed)
        )
        last = res.trace[-1]
        objective = {"fit": last.fit, "penalty": last.penalty, "total": last.total}
        trace = [[r.iteration, r.fit, r.penalty, r.total] for r in res.trace]
    else:
        res = fit_balanced_mincut(
            X,
            cfg.k,
            cfg.k_neighbors,
            MincutConfig(
                gamma=gamma,
                scale=cfg.scale,
                init_mode=cfg.init_mode,
                seed=seed,
                repair_empty=cfg.repair_empty,
            ),
        )
        objective = {
            "within": res.within,
            "penalty": res.penalty,
            "total": res.total,
            "rho": res.rho,
        }
        trace = [[r.iteration, r.shifted, r.within, r.penalty, r.total] for r in res.trace]
    wall_ms = (time.perf_counter() - start) * 1000.0

    a = res.assignment
    bal = balance_report(a)
    empties = int((a.sizes() == 0).sum())
    return {
        "seed": int(seed),
        "gamma": float(gamma),
        "iterations": int(res.iterations),
        "converged": bool(res.converged),
        "wall_ms": float(wall_ms),
        "acc": float(accuracy(a, truth)) if truth is not None else None,
        "nmi": float(nmi(a, truth)) if truth is not None else None,
        "sizes": [int(s) for s in a.sizes()],
        "balance": {
            "penalty_value": int(bal.penalty_value),
            "size_stddev": float(bal.size_stddev),
            "perfectly_balanced": bool(bal.perfectly_balanced),
        },
        "warnings": [f"{empties} empty cluster(s) in the final assignment"] if empties else [],
        "objective": {key: float(v) for key, v in objective.items()},
        "trace": [[float(v) for v in row] for row in trace],
    }


def _aggregate(runs: list[dict]) -> dict:
    agg: dict = {}
    for key in ("acc", "nmi"):
        vals = [r[key] for r in runs]
        if any(v is None for v in vals):
            agg[f"{key}_mean"] = None
            agg[f"{key}_std"] = None
        else:
            agg[f"{key}_mean"] = float(np.mean(vals))
            agg[f"{key}_std"] = float(np.std(vals))  # population std over the seed list
    agg["penalty_value_mean"] = float(np.mean([r["balance"]["penalty_value"] for r in runs]))
    agg["size_stddev_mean"] = float(np.mean([r["balance"]["size_stddev"] for r in runs]))
    agg["perfectly_balanced_rate"] = float(
        np.mean([1.0 if r["balance"]["perfectly_balanced"] else 0.0 for r in runs])
    )
    return agg


def _gamma_block(
    X: DataMatrix, truth: Assignment | None, cfg: ExperimentConfig, gamma: float
) -> dict:
    runs = [_single_run(X, truth, cfg, gamma, seed) for seed in cfg.seeds]
    return {"gamma": float(gamma), "aggregates": _aggregate(runs), "runs": runs}


def _assemble(
    cfg: ExperimentConfig,
    desc: dict,
    blocks: list[dict],
    sweep: list[dict],
    selected_gamma: float | None,
) -> dict:
    warnings_out = []
    flagged = sum(1 for b in blocks for r in b["runs"] if r["warnings"])
    if flagged:
        warnings_out.append(f"{flagged} run(s) ended with empty clusters")
    return {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "algorithm": cfg.algorithm,
            "k": int(cfg.k),
            "gamma": float(cfg.gamma) if cfg.gamma_grid is None else None,
            "gamma_grid": [float(g) for g in cfg.gamma_grid] if cfg.gamma_grid else None,
            "k_neighbors": int(cfg.k_neighbors),
            "scale": cfg.scale if isinstance(cfg.scale, str) else float(cfg.scale),
            "init_mode": cfg.init_mode,
            "seeds": [int(s) for s in cfg.seeds],
            "repair_empty": bool(cfg.repair_empty),
            "select_by": cfg.select_by,
            "dataset": desc,
        },
        "selected_gamma": selected_gamma,
        "sweep": sweep,
        "warnings": warnings_out,
        "blocks": blocks,
    }


def _write_if_configured(report: dict, cfg: ExperimentConfig) -> None:
    if cfg.out_path is not None:
        emit_report(report, cfg.out_path, cfg.out_format)


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Run cfg.algorithm once per seed at the single gamma cfg.gamma."""
    X, truth, desc = load_dataset(cfg)
    block = _gamma_block(X, truth, cfg, cfg.gamma)
    report = _assemble(cfg, desc, [block], sweep=[], selected_gamma=None)
    _write_if_configured(report, cfg)
    return report


def grid_search(cfg: ExperimentConfig) -> dict:
    """Sweep the gamma grid, aggregate per gamma, and select the best gamma.

    Selection maximizes mean ACC across seeds (or mean NMI with
    select_by="nmi"); ties prefer the smaller gamma. Requires ground-truth
    labels.
    """
    X, truth, desc = load_dataset(cfg)
    if truth is None:
        raise ValueError("gamma grid search requires ground-truth labels")
    grid = sorted(set(float(g) for g in (cfg.gamma_grid or DEFAULT_GAMMA_GRID)))
    if any(g < 0 for g in grid):
        raise ValueError("gamma grid values must be >= 0")
    cfg = replace(cfg, gamma_grid=tuple(grid))  # echo the resolved grid in the report

    blocks = [_gamma_block(X, truth, cfg, g) for g in grid]
    sweep = [
        {
            "gamma": b["gamma"],
            "acc_mean": b["aggregates"]["acc_mean"],
            "acc_std": b["aggregates"]["acc_std"],
            "nmi_mean": b["aggregates"]["nmi_mean"],
            "nmi_std": b["aggregates"]["nmi_std"],
        }
        for b in blocks
    ]
    key = cfg.select_by + "_mean"
    best = max(range(len(blocks)), key=lambda i: (blocks[i]["aggregates"][key], -i))
    # max() keeps the first (smallest gamma) among exact ties via the -i tiebreak
    report = _assemble(cfg, desc, blocks, sweep, selected_gamma=blocks[best]["gamma"])
    _write_if_configured(report, cfg)
    return report


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def emit_report(report: dict, path, out_format: str = "json") -> None:
    """Serialize a report: canonical JSON, or flat per-run CSV rows.

    CSV keeps one row per (seed, gamma) with the columns seed, gamma, acc, nmi,
    penalty (the raw size-square sum), iterations, wall_ms; floats carry 12
    significant digits.
    """
    if out_format == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    elif out_format == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for block in report["blocks"]:
                for run in block["runs"]:
                    writer.writerow(
                        [
                            run["seed"],
                            _csv_cell(run["gamma"]),
                            _csv_cell(run["acc"]),
                            _csv_cell(run["nmi"]),
                            run["balance"]["penalty_value"],
                            run["iterations"],
                            _csv_cell(run["wall_ms"]),
                        ]
                    )
    else:
        raise ValueError(f"unknown report format {out_format!r}")
