"""Profit maximization in closed social networks."""

from ._core import (
    ConfigError,
    CostBenefitTable,
    DataError,
    DiffusionNetwork,
    EdgeProbabilities,
    Graph,
    LimitExceeded,
    Solution,
    __version__,
    count_diffusion_networks,
    csv_columns,
    estimate_profit,
    exact_benefit,
    exact_optimum,
    load_edge_list,
    run,
    sample_bound,
    sample_diffusion_network,
    solve,
    top_degree_network,
    validate_network,
)

__all__ = [
    "ConfigError",
    "CostBenefitTable",
    "DataError",
    "DiffusionNetwork",
    "EdgeProbabilities",
    "Graph",
    "LimitExceeded",
    "Solution",
    "__version__",
    "count_diffusion_networks",
    "csv_columns",
    "estimate_profit",
    "exact_benefit",
    "exact_optimum",
    "load_edge_list",
    "run",
    "sample_bound",
    "sample_diffusion_network",
    "solve",
    "top_degree_network",
    "validate_network",
]
