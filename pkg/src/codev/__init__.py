"""Seedable simulator of iterative design cycles on generated artifact networks.

Agents, one per artifact, repeatedly optimize their own decision variable
against the latest values reported by their network neighbors, until the
system-level performance (the sum of reported objective values) stops
changing. A sweep harness runs the sensitivity grid and persists one CSV row
per execution.
"""

from .annealing import AnnealParams, AnnealingAbortError, anneal
from .engine import (
    ConfigError,
    ExecutionResult,
    SystemConfig,
    check_convergence,
    initialize_system,
    run_cycle,
    run_execution,
    system_performance,
)
from .experiment import SweepSpec, derive_seed, enumerate_combinations, run_sweep
from .kernels import BACKEND
from .netgen import ArtifactNetwork, generate_network, network_stats
from .objectives import domain, evaluate, optimum

__version__ = "0.1.0"

__all__ = [
    "AnnealParams",
    "AnnealingAbortError",
    "ArtifactNetwork",
    "BACKEND",
    "ConfigError",
    "ExecutionResult",
    "SweepSpec",
    "SystemConfig",
    "anneal",
    "check_convergence",
    "derive_seed",
    "domain",
    "enumerate_combinations",
    "evaluate",
    "generate_network",
    "initialize_system",
    "network_stats",
    "optimum",
    "run_cycle",
    "run_execution",
    "run_sweep",
    "system_performance",
]
