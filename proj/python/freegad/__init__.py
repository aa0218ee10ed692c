"""Training-free graph anomaly detection.

The package wraps a C++ core: graphs are encoded by parameter-free
propagation with affinity-gated residuals, anchor nodes are picked from the
ends of the affinity ranking, and each node is scored by distance statistics
to the two anchor sets.
"""

from freegad._core import (
    Dataset,
    SparseGraph,
    __version__,
    anchor_distances,
    auprc,
    auroc,
    build_graph,
    encode,
    final_scores,
    generate_synthetic,
    grid_search,
    load_dataset,
    load_scores,
    make_dataset,
    node_affinity,
    propagate,
    run_pipeline,
    save_scores,
    select_anchors,
    spmv,
)

__all__ = [
    "Dataset",
    "SparseGraph",
    "__version__",
    "anchor_distances",
    "auprc",
    "auroc",
    "build_graph",
    "encode",
    "final_scores",
    "generate_synthetic",
    "grid_search",
    "load_dataset",
    "load_scores",
    "make_dataset",
    "node_affinity",
    "propagate",
    "run_pipeline",
    "save_scores",
    "select_anchors",
    "spmv",
]
