"""Two-stage monotone submodular maximization (C++ core)."""

from ._core import (
    ArgumentError,
    BudgetExceeded,
    ConfigError,
    InvariantError,
    ObjectiveFamily,
    PreconditionError,
    StateError,
    TwoStageSolution,
    bounds,
    brute_force_opt,
    callable_family,
    distributed_fast,
    evaluate_solution,
    facility_convenience,
    facility_family,
    lambda_gain,
    make_synthetic,
    marginal,
    modular_family,
    nabla,
    recommend_machine_count,
    rep,
    replacement_distributed,
    replacement_greedy,
    run_experiment_json,
    run_know_opt,
    run_streaming,
)

__all__ = [name for name in dir() if not name.startswith("_")]
