"""Temporal-neural-network reinforcement learning on the cart-pole."""

from ._core import (
    ConfigError,
    CtnnColumn,
    ExperimentConfig,
    __version__,
    bellman_update,
    detect_convergence,
    discretize,
    dynamics,
    encode_mhot,
    load_config,
    rif_response,
    run_experiment,
    step_env,
)

__all__ = [
    "ConfigError",
    "CtnnColumn",
    "ExperimentConfig",
    "__version__",
    "bellman_update",
    "detect_convergence",
    "discretize",
    "dynamics",
    "encode_mhot",
    "load_config",
    "rif_response",
    "run_experiment",
    "step_env",
]
