"""Steady states, entropy production and photon statistics of a repumped
atomic ensemble coupled to a lossy cavity, computed on the permutation
invariant (J, M) ladder."""

from ._core import (
    BalanceReport,
    BoundaryDistribution,
    Channel,
    DarkState,
    Distribution,
    DivergentEntropy,
    EntropyReport,
    Generator,
    JumpEvent,
    JumpRecord,
    LevelIndex,
    ModelParams,
    NotConverged,
    ObservableSet,
    Rational,
    SingularOrNonUnique,
    boundary_generator,
    boundary_recursion,
    build_generator,
    channel_rate,
    channel_target,
    collective_rate_factor,
    detailed_balance_check,
    entropy_rates,
    evolve,
    finite_n_ratio,
    g2,
    gaussian_limit,
    index_of,
    is_valid_level,
    jump_map,
    level_of,
    multiplicity,
    observables,
    occupancy,
    point_mass,
    ratio_table,
    residual,
    simulate,
    small_w_populations,
    state_count,
    steady_state,
    total_variation,
    uniform_distribution,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
