"""Root and seed recovery for trees grown by uniform or preferential attachment."""

from ._core import (
    BudgetExceeded,
    ConfidenceSet,
    Error,
    Generated,
    GrowthRecord,
    InputError,
    ParameterError,
    SeedPlacement,
    Tree,
    aut_bar,
    beta_cdf_int,
    compute_bound,
    derive_seed,
    dfs_cover_set,
    dfs_threshold,
    distribution_check,
    enumerate_placements,
    generate,
    log_likelihood_all_roots,
    log_likelihood_rooted,
    log_likelihood_seed,
    mle_root,
    mle_seed,
    phi_log_all,
    phi_set,
    psi_all,
    psi_set,
    read_tree,
    run_experiment,
    seeds,
    skeleton_leaf_set,
    star_recover,
    wilson_interval,
    write_tree,
)

__version__ = "0.1.0"
