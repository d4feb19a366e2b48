"""One engineer/artifact pair: decision variable, per-cycle step, reporting.

An agent owns one scalar decision variable and minimizes its artifact's
objective over that variable, holding the neighbors' reported values fixed.
Its estimate type is drawn once at initialization and never changes:
`future` agents report the value they just optimized, `current` agents
report the value their design had when the cycle began (a one-cycle lag).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels, objectives
from .annealing import AnnealParams, DESIGN_REFINE_RTOL

CURRENT = "current"
FUTURE = "future"

METHOD_CURRENT_ONLY = "current-only"
METHOD_FUTURE = "future"
ESTIMATION_METHODS = (METHOD_CURRENT_ONLY, METHOD_FUTURE)


@dataclass
class Agent:
    index: int
    kind: str
    neighbors: tuple[int, ...]
    estimate_type: str
    x_actual: float
    x_reported: float
    y_reported: float | None = None


def init_agent(
    index: int,
    network,
    kind: str,
    p_e: float,
    estimation_method: str,
    rng: np.random.Generator,
) -> Agent:
    """Draw the initial design and fix the estimate type.

    Consumes one uniform for the design draw and, when the estimation method
    allows future estimates, one more for the type draw. The initial reported
    objective is computed afterwards at system initialization, once every
    agent's starting report exists.
    """
    if estimation_method not in ESTIMATION_METHODS:
        raise ValueError(f"unknown estimation method {estimation_method!r}")
    lo, hi = objectives.domain(kind)
    x0 = lo + rng.random() * (hi - lo)
    if estimation_method == METHOD_FUTURE:
        estimate_type = FUTURE if rng.random() < p_e else CURRENT
    else:
        estimate_type = CURRENT
    return Agent(
        index=index,
        kind=kind,
        neighbors=tuple(network.neighbor_lists[index]),
        estimate_type=estimate_type,
        x_actual=x0,
        x_reported=x0,
    )


def design_step(
    agent: Agent,
    neighbor_reports,
    params: AnnealParams,
    rng: np.random.Generator,
    refine_rtol: float = DESIGN_REFINE_RTOL,
) -> Agent:
    """One design cycle for one agent against frozen cycle-start reports.

    Searches the 1-D slice objective x -> f([x, *neighbor_reports]) over the
    kind's domain, keeps the incumbent design unless the search's refined
    outcome improves on it (or survives the probabilistic acceptance test at
    the agent's relative effort scale), and reports per the agent's estimate
    type. `neighbor_reports` must be ordered ascending by neighbor index and
    match the agent's degree.
    """
    if len(neighbor_reports) != len(agent.neighbors):
        raise ValueError(
            f"expected {len(agent.neighbors)} neighbor reports, "
            f"got {len(neighbor_reports)}"
        )
    lo, hi = objectives.domain(agent.kind)
    kind_id = objectives.KIND_IDS[agent.kind]
    x_start = agent.x_actual
    x_new, y_new, y_start, _ = kernels.design_slice(
        kind_id, neighbor_reports, lo, hi,
        params.tau, params.rho, params.omega, params.n_inner, rng,
        x_start, refine_rtol,
    )
    agent.x_actual = x_new
    if agent.estimate_type == FUTURE:
        agent.x_reported = x_new
        agent.y_reported = y_new
    else:
        agent.x_reported = x_start
        agent.y_reported = y_start
    return agent
