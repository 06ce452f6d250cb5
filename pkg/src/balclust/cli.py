"""Command-line front end for the benchmark harness."""

from __future__ import annotations

import argparse
import sys

from .harness import (
    ALGORITHMS,
    DEFAULT_SEEDS,
    ExperimentConfig,
    grid_search,
    run_experiment,
)

_INIT_MODES = {"uniform": "uniform_random", "balanced": "balanced_random"}


def _parse_blobs(text: str):
    parts = text.split(":")
    if len(parts) != 5:
        raise argparse.ArgumentTypeError("expected K:PER:D:SPREAD:SEP")
    try:
        return (int(parts[0]), int(parts[1]), int(parts[2]), float(parts[3]), float(parts[4]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad blob spec {text!r}: {exc}") from None


def _parse_seeds(text: str):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None


def _parse_scale(text: str):
    if text == "self":
        return "self"
    if text.startswith("global:"):
        try:
            return float(text.split(":", 1)[1])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad scale {text!r}") from None
    raise argparse.ArgumentTypeError("scale must be 'self' or 'global:<delta>'")


def _parse_grid(text: str):
    if text == "default":
        return None  # harness substitutes the default grid
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad gamma grid {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="balclust",
        description="Benchmark balance-regularized k-means / min-cut clustering.",
    )
    p.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--data", metavar="PATH", help="row-per-sample CSV file")
    source.add_argument(
        "--blobs",
        type=_parse_blobs,
        metavar="K:PER:D:SPREAD:SEP",
        help="synthetic balanced Gaussian blobs",
    )
    p.add_argument("--labels-col", type=int, default=None, help="zero-based truth column in --data")
    p.add_argument("--has-header", action="store_true", help="skip the first CSV row")
    p.add_argument("--k", type=int, default=None, help="cluster count (defaults to the blob K)")
    gam = p.add_mutually_exclusive_group()
    gam.add_argument("--gamma", type=float, default=None, help="single balance weight (default 0)")
    gam.add_argument(
        "--gamma-grid",
        type=_parse_grid,
        nargs="?",
        const=None,
        default=argparse.SUPPRESS,
        metavar="G1,G2,...",
        help="grid-search gammas; bare flag or 'default' uses the built-in grid",
    )
    p.add_argument("--neighbors", type=int, default=5, help="kNN count for the affinity graph")
    p.add_argument("--scale", type=_parse_scale, default="self", help="'self' or 'global:<delta>'")
    p.add_argument("--seeds", type=_parse_seeds, default=DEFAULT_SEEDS, help="comma-separated seeds")
    p.add_argument("--init", choices=sorted(_INIT_MODES), default="uniform")
    p.add_argument("--select-by", choices=("acc", "nmi"), default="acc",
                   help="grid-search selection metric")
    p.add_argument("--repair-empty", action="store_true", help="fill empty min-cut clusters post-hoc")
    p.add_argument("--blob-seed", type=int, default=0, help="seed for --blobs generation")
    p.add_argument("--out", default=None, metavar="PATH", help="write the report here")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--no-plots", action="store_true", help="skip figure rendering next to --out")
    return p


def _summarize(report: dict, figures: list[str]) -> None:
    cfg = report["config"]
    data = cfg["dataset"]
    print(f"{cfg['algorithm']} on n={data['n']}, d={data['n_features']}, k={cfg['k']}")
    for block in report["blocks"]:
        agg = block["aggregates"]
        line = f"  gamma={block['gamma']:<10g}"
        if agg["acc_mean"] is not None:
            line += f" acc={agg['acc_mean']:.4f}+/-{agg['acc_std']:.4f}"
            line += f" nmi={agg['nmi_mean']:.4f}+/-{agg['nmi_std']:.4f}"
        line += f" size_stddev={agg['size_stddev_mean']:.3f}"
        print(line)
    if report["selected_gamma"] is not None:
        print(f"selected gamma: {report['selected_gamma']:g}")
    for warning in report["warnings"]:
        print(f"warning: {warning}")
    for path in figures:
        print(f"figure: {path}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    grid_mode = hasattr(args, "gamma_grid")
    try:
        k = args.k
        if k is None:
            if args.blobs is None:
                raise ValueError("--k is required with --data")
            k = args.blobs[0]
        cfg = ExperimentConfig(
            algorithm=args.algorithm,
            k=k,
            data_path=args.data,
            label_column=args.labels_col,
            has_header=args.has_header,
            blobs=args.blobs,
            blob_seed=args.blob_seed,
            gamma=args.gamma if args.gamma is not None else 0.0,
            gamma_grid=args.gamma_grid if grid_mode else None,
            k_neighbors=args.neighbors,
            scale=args.scale,
            seeds=args.seeds,
            init_mode=_INIT_MODES[args.init],
            repair_empty=args.repair_empty,
            select_by=args.select_by,
            out_path=args.out,
            out_format=args.format,
        )
        report = grid_search(cfg) if grid_mode else run_experiment(cfg)
        figures: list[str] = []
        if args.out and not args.no_plots:
            from .plots import render_report_figures

            figures = render_report_figures(report, args.out)
        _summarize(report, figures)
        if args.out:
            print(f"report: {args.out}")
        return 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
