"""Community structure as f-mutual information.

Builds the frequency matrix of a bipartite multigraph, compares it to an
unbiased configuration null through the dual form of an f-divergence,
and approximates the resulting modularity with low-rank distinguishers.
Includes the Newman/total-variation special cases, planted block model
generators with community contraction, and an experiment harness.
"""

from .blockmodel import (
    contract,
    initial_groups,
    merge_kernel,
    run_schedule,
    sample_counts,
    sample_frequency,
    sample_graph,
    sbm_distribution,
)
from .estimators import FModularity, TVDBipartition
from .experiments import (
    ExperimentConfig,
    StageResult,
    TrialError,
    baseline_mi,
    export,
    export_heatmaps,
    iter_experiment,
    load_results,
    run_experiment,
    theoretical_mi,
)
from .families import DivergenceFamily, NumericalDomainError, available_families, get_family
from .fileio import (
    read_edge_list,
    read_groups,
    read_matrix_csv,
    read_partition,
    write_edge_list,
    write_groups,
    write_matrix_csv,
)
from .information import (
    InfiniteDivergenceError,
    apply_channel,
    f_divergence,
    f_mutual_information,
    marginal_product,
)
from .lowrank import (
    LowRankFactors,
    nmf,
    rank_from_singular_values,
    residual_ratio,
    select_rank,
    truncated_svd,
)
from .modularity import (
    ModularityReport,
    dual_objective,
    f_modularity,
    newman_modularity,
    optimal_distinguisher,
    pearson_weighted_identity,
    tvd_bipartition,
    tvd_modularity_unconstrained,
)
from .network import (
    BipartiteMultigraph,
    FrequencyMatrix,
    frequency_from_counts,
    frequency_from_graph,
    induce_bipartite,
    newman_null,
    null_model,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteMultigraph",
    "DivergenceFamily",
    "ExperimentConfig",
    "FModularity",
    "FrequencyMatrix",
    "InfiniteDivergenceError",
    "LowRankFactors",
    "ModularityReport",
    "NumericalDomainError",
    "StageResult",
    "TVDBipartition",
    "TrialError",
    "apply_channel",
    "available_families",
    "baseline_mi",
    "contract",
    "dual_objective",
    "export",
    "export_heatmaps",
    "f_divergence",
    "f_modularity",
    "f_mutual_information",
    "frequency_from_counts",
    "frequency_from_graph",
    "get_family",
    "induce_bipartite",
    "initial_groups",
    "iter_experiment",
    "load_results",
    "marginal_product",
    "merge_kernel",
    "newman_modularity",
    "newman_null",
    "nmf",
    "null_model",
    "optimal_distinguisher",
    "pearson_weighted_identity",
    "rank_from_singular_values",
    "read_edge_list",
    "read_groups",
    "read_matrix_csv",
    "read_partition",
    "residual_ratio",
    "run_experiment",
    "run_schedule",
    "sample_counts",
    "sample_frequency",
    "sample_graph",
    "sbm_distribution",
    "select_rank",
    "theoretical_mi",
    "truncated_svd",
    "tvd_bipartition",
    "tvd_modularity_unconstrained",
    "write_edge_list",
    "write_groups",
    "write_matrix_csv",
]
