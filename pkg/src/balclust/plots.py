"""Figure rendering for harness reports (PNG files next to the report)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _selected_block(report: dict) -> dict:
    blocks = report["blocks"]
    chosen = report.get("selected_gamma")
    if chosen is not None:
        for block in blocks:
            if block["gamma"] == chosen:
                return block
    return blocks[0]


def _save(fig, path: Path, written: list[str]) -> None:
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(str(path))


def render_report_figures(report: dict, out_path) -> list[str]:
    """Write the report's figures next to out_path and return their paths.

    Always: per-seed objective traces and the sorted cluster-size profile for
    the selected (or only) gamma. Grid reports additionally get the gamma
    sensitivity curve (mean accuracy with a std band per gamma).
    """
    stem = Path(out_path).with_suffix("")
    algorithm = report["config"]["algorithm"]
    block = _selected_block(report)
    written: list[str] = []

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for run in block["runs"]:
        tr = np.asarray(run["trace"], dtype=float)
        ax.plot(tr[:, 0], tr[:, -1], lw=1.2, alpha=0.75)
    ax.set_xlabel("iteration")
    ax.set_ylabel("objective total")
    ax.set_title(f"{algorithm}: objective per seed (gamma={block['gamma']:g})")
    ax.grid(alpha=0.3)
    _save(fig, stem.parent / f"{stem.name}_trace.png", written)

    sweep = [row for row in report.get("sweep", []) if row["acc_mean"] is not None]
    if sweep:
        gammas = np.array([row["gamma"] for row in sweep])
        means = np.array([row["acc_mean"] for row in sweep])
        stds = np.array([row["acc_std"] for row in sweep])
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        ax.errorbar(gammas, means, yerr=stds, marker="o", capsize=3)
        if (gammas > 0).all():
            ax.set_xscale("log")
        sel = report.get("selected_gamma")
        if sel is not None:
            ax.axvline(sel, color="tab:red", ls="--", lw=1.0, label=f"selected {sel:g}")
            ax.legend()
        ax.set_xlabel("gamma")
        ax.set_ylabel("mean accuracy")
        ax.set_title(f"{algorithm}: gamma sensitivity")
        ax.grid(alpha=0.3, which="both")
        _save(fig, stem.parent / f"{stem.name}_sensitivity.png", written)

    sizes = np.array([sorted(run["sizes"], reverse=True) for run in block["runs"]], dtype=float)
    k = sizes.shape[1]
    n = float(np.sum(block["runs"][0]["sizes"]))
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.bar(np.arange(1, k + 1), sizes.mean(axis=0), yerr=sizes.std(axis=0), capsize=3)
    ax.axhline(n / k, color="tab:red", ls="--", lw=1.0, label="even split")
    ax.set_xlabel("cluster rank (largest first)")
    ax.set_ylabel("mean size across seeds")
    ax.set_title(f"{algorithm}: size profile (gamma={block['gamma']:g})")
    ax.legend()
    ax.grid(alpha=0.3, axis="y")
    _save(fig, stem.parent / f"{stem.name}_sizes.png", written)
    return written
