"""Pure-Python twin of the compiled hot-loop kernel.

Composed directly from the reference pieces (`annealing` over
`objectives.eval_vector`), so the compiled module has a bit-exact oracle to
match. Selected at import time by `codev.kernels` when the extension is
unavailable or explicitly disabled.
"""

from __future__ import annotations

import numpy as np

from . import objectives
from .annealing import AnnealParams, anneal, design_search

BACKEND_NAME = "python"


def eval_vec(kind_id: int, v) -> float:
    return objectives.eval_vector(kind_id, v)


def _slice_objective(kind_id: int, neighbor_values):
    buf = [0.0] + [float(v) for v in neighbor_values]

    def objective(x: float) -> float:
        buf[0] = x
        return objectives.eval_vector(kind_id, buf)

    return objective


def anneal_slice(
    kind_id: int,
    neighbor_values,
    lo: float,
    hi: float,
    tau: float,
    rho: float,
    omega: int,
    n_inner: int,
    rng: np.random.Generator,
) -> tuple[float, float, int]:
    """Minimize the slice objective x -> f([x, *neighbor_values])."""
    params = AnnealParams(tau=tau, rho=rho, omega=omega, n_inner=n_inner)
    return anneal(_slice_objective(kind_id, neighbor_values), (lo, hi), params, rng)


def design_slice(
    kind_id: int,
    neighbor_values,
    lo: float,
    hi: float,
    tau: float,
    rho: float,
    omega: int,
    n_inner: int,
    rng: np.random.Generator,
    x_incumbent: float,
    refine_rtol: float,
) -> tuple[float, float, float, int]:
    """One design-cycle search for the slice objective; returns
    (x_new, y_new, y_incumbent, evals)."""
    params = AnnealParams(tau=tau, rho=rho, omega=omega, n_inner=n_inner)
    return design_search(
        _slice_objective(kind_id, neighbor_values), (lo, hi), params, rng,
        x_incumbent, refine_rtol,
    )


def run_cycle(
    kind_id: int,
    indptr,
    indices,
    s_start,
    x_actual,
    future_mask,
    lo: float,
    hi: float,
    tau: float,
    rho: float,
    omega: int,
    n_inner: int,
    rngs,
    refine_rtol: float,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Step every agent against the frozen cycle-start reports.

    Mutates x_actual in place; returns (x_reported, y_reported, F) with F
    accumulated in agent-index order.
    """
    n = len(s_start)
    s_list = [float(v) for v in s_start]
    x_rep = np.empty(n, dtype=np.float64)
    y_rep = np.empty(n, dtype=np.float64)
    f_total = 0.0
    for i in range(n):
        nb = [s_list[j] for j in indices[indptr[i]:indptr[i + 1]]]
        x_start = float(x_actual[i])
        x_new, y_new, y_inc, _ = design_slice(
            kind_id, nb, lo, hi, tau, rho, omega, n_inner, rngs[i],
            x_start, refine_rtol,
        )
        x_actual[i] = x_new
        if future_mask[i]:
            x_rep[i] = x_new
            y = y_new
        else:
            x_rep[i] = x_start
            y = y_inc
        y_rep[i] = y
        f_total += y
    return x_rep, y_rep, f_total
