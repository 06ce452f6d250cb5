"""Balance-regularized k-means and min-cut clustering with a benchmark harness."""

__version__ = "0.1.0"

from .affinity import (
    AffinityMatrix,
    build_affinity,
    cut_value,
    degree_vector,
    knn_sets,
    load_affinity_csv,
    save_affinity_csv,
)
from .data import (
    Assignment,
    DataMatrix,
    cluster_sizes,
    generate_blobs,
    init_assignment,
    load_csv,
    save_csv,
)
from .harness import (
    DEFAULT_GAMMA_GRID,
    DEFAULT_SEEDS,
    ExperimentConfig,
    emit_report,
    grid_search,
    load_dataset,
    run_experiment,
)
from .kmeans import (
    KmeansConfig,
    KmeansResult,
    TraceRecord,
    fit_balanced_kmeans,
    kmeans_objective,
    sweep_rows,
    update_centroids,
)
from .metrics import BalanceReport, accuracy, balance_report, contingency_table, nmi
from .mincut import (
    MincutConfig,
    MincutResult,
    MincutTraceRecord,
    argmax_assign,
    compute_scores,
    fit_balanced_mincut,
    mincut_objective,
    select_rho,
)
from .oracle import (
    brute_force_accuracy,
    exhaustive_kmeans_optimum,
    exhaustive_mincut_optimum,
)
from .penalty import exclusive_lasso_penalty, most_balanced_value, penalty_delta

__all__ = [
    "AffinityMatrix",
    "Assignment",
    "BalanceReport",
    "DataMatrix",
    "DEFAULT_GAMMA_GRID",
    "DEFAULT_SEEDS",
    "ExperimentConfig",
    "KmeansConfig",
    "KmeansResult",
    "MincutConfig",
    "MincutResult",
    "MincutTraceRecord",
    "TraceRecord",
    "accuracy",
    "argmax_assign",
    "balance_report",
    "brute_force_accuracy",
    "build_affinity",
    "cluster_sizes",
    "compute_scores",
    "contingency_table",
    "cut_value",
    "degree_vector",
    "emit_report",
    "exclusive_lasso_penalty",
    "exhaustive_kmeans_optimum",
    "exhaustive_mincut_optimum",
    "fit_balanced_kmeans",
    "fit_balanced_mincut",
    "generate_blobs",
    "grid_search",
    "init_assignment",
    "knn_sets",
    "kmeans_objective",
    "load_affinity_csv",
    "load_csv",
    "load_dataset",
    "mincut_objective",
    "most_balanced_value",
    "nmi",
    "penalty_delta",
    "run_experiment",
    "save_affinity_csv",
    "save_csv",
    "select_rho",
    "sweep_rows",
    "update_centroids",
]
