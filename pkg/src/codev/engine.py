"""One full execution: initialize, iterate design cycles, detect convergence.

Cycles are synchronous: every agent reads the same frozen cycle-start system
vector S, optimizes its own variable, and all reports are written back
together. System performance F(t) is the plain sum of the agents' reported
objective values. Convergence requires the mean absolute change of F over
the three preceding cycles to drop below the threshold; with initialization
at t = 0, the first checkable cycle is t = 4 so all three comparisons span
full design cycles, and N is always in [4, d].

Randomness is split per run: one child stream for network generation, one
for agent initialization, and one per agent for its annealing searches, so
agents can be stepped in any order (or concurrently) without changing the
result.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict

import numpy as np

from . import agents, kernels, netgen, objectives
from .agents import METHOD_FUTURE, ESTIMATION_METHODS
from .annealing import DESIGN_REFINE_RTOL


class ConfigError(ValueError):
    """An execution parameter is missing or out of range."""


@dataclass(frozen=True)
class SystemConfig:
    """All independent variables and constants of one execution."""

    n: int
    kind: str
    p_t: float
    epsilon: float
    p_e: float
    seed: int
    h: int = 2
    d: int = 100
    tau: float = 0.1
    rho: float = 2.62
    omega: int = 1
    n_inner: int = 50
    estimation_method: str = METHOD_FUTURE

    def __post_init__(self):
        if self.kind not in objectives.KINDS:
            raise ConfigError(
                f"kind must be one of {objectives.KINDS}, got {self.kind!r}"
            )
        if self.h < 1:
            raise ConfigError(f"h must be >= 1, got {self.h}")
        if self.n <= self.h:
            raise ConfigError(f"n must exceed h, got n={self.n}, h={self.h}")
        if not 0.0 <= self.p_t <= 1.0:
            raise ConfigError(f"p_t must be in [0, 1], got {self.p_t}")
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be > 0, got {self.epsilon}")
        if not 0.0 <= self.p_e <= 1.0:
            raise ConfigError(f"p_e must be in [0, 1], got {self.p_e}")
        if self.d < 4:
            raise ConfigError(f"d must be >= 4, got {self.d}")
        if not self.tau > 0:
            raise ConfigError(f"tau must be > 0, got {self.tau}")
        if not self.rho > 1:
            raise ConfigError(f"rho must be > 1, got {self.rho}")
        if self.omega < 1:
            raise ConfigError(f"omega must be >= 1, got {self.omega}")
        if self.n_inner < 1:
            raise ConfigError(f"n_inner must be >= 1, got {self.n_inner}")
        if self.estimation_method not in ESTIMATION_METHODS:
            raise ConfigError(
                f"estimation_method must be one of {ESTIMATION_METHODS}, "
                f"got {self.estimation_method!r}"
            )

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SystemState:
    t: int
    net: netgen.ArtifactNetwork
    S: np.ndarray                 # latest reported designs, length n
    x_actual: np.ndarray
    y_reported: np.ndarray
    future_mask: np.ndarray
    F_history: list[float]
    agent_rngs: list[np.random.Generator]

    @property
    def agents(self) -> list[agents.Agent]:
        """Materialized per-agent records (inspection/testing view)."""
        return [
            agents.Agent(
                index=i,
                kind=self._kind,
                neighbors=self.net.neighbor_lists[i],
                estimate_type=agents.FUTURE if self.future_mask[i] else agents.CURRENT,
                x_actual=float(self.x_actual[i]),
                x_reported=float(self.S[i]),
                y_reported=float(self.y_reported[i]),
            )
            for i in range(self.net.n)
        ]

    _kind: str = field(default="", repr=False)


@dataclass(frozen=True)
class ExecutionResult:
    N: int
    F_final: float
    converged: bool
    F_history: tuple[float, ...]

    def to_json(self, config: SystemConfig | None = None, indent: int | None = 2) -> str:
        doc: dict = {}
        if config is not None:
            doc["config"] = config.to_dict()
        doc.update(
            N=self.N,
            F_final=self.F_final,
            converged=self.converged,
            F_history=list(self.F_history),
        )
        return json.dumps(doc, indent=indent)


def system_performance(y_reported) -> float:
    """Sum of the reported objective evaluations, in agent-index order."""
    total = 0.0
    for y in y_reported:
        total += float(y)
    return total


def check_convergence(F_history, epsilon: float, t: int, min_cycles: int = 4) -> bool:
    """True iff t >= min_cycles and mean |F(t) - F(t-t')| over t' in {1,2,3}
    is below epsilon. The default floor of 4 keeps all three comparisons on
    full design cycles; it is exposed only for robustness checks."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if t < max(min_cycles, 3):
        return False
    f_t = F_history[t]
    dev = (
        abs(f_t - F_history[t - 1])
        + abs(f_t - F_history[t - 2])
        + abs(f_t - F_history[t - 3])
    )
    return dev / 3.0 < epsilon


def initialize_system(config: SystemConfig) -> SystemState:
    """Generate the network, draw initial designs, compute F(0)."""
    root = np.random.SeedSequence(config.seed)
    children = root.spawn(2 + config.n)
    net_rng = np.random.Generator(np.random.PCG64(children[0]))
    init_rng = np.random.Generator(np.random.PCG64(children[1]))
    agent_rngs = [
        np.random.Generator(np.random.PCG64(c)) for c in children[2:]
    ]

    net = netgen.generate_network(config.n, config.h, config.p_t, net_rng)

    member = [
        agents.init_agent(i, net, config.kind, config.p_e,
                          config.estimation_method, init_rng)
        for i in range(config.n)
    ]
    S = np.array([a.x_reported for a in member], dtype=np.float64)
    x_actual = np.array([a.x_actual for a in member], dtype=np.float64)
    future_mask = np.array(
        [1 if a.estimate_type == agents.FUTURE else 0 for a in member],
        dtype=np.uint8,
    )

    kind_id = objectives.KIND_IDS[config.kind]
    s_list = S.tolist()
    y0 = np.array(
        [
            objectives.eval_vector(
                kind_id, [s_list[i]] + [s_list[j] for j in net.neighbor_lists[i]]
            )
            for i in range(config.n)
        ],
        dtype=np.float64,
    )

    return SystemState(
        t=0,
        net=net,
        S=S,
        x_actual=x_actual,
        y_reported=y0,
        future_mask=future_mask,
        F_history=[system_performance(y0)],
        agent_rngs=agent_rngs,
        _kind=config.kind,
    )


def run_cycle(state: SystemState, config: SystemConfig) -> SystemState:
    """One synchronous design cycle; appends F(t) and increments t."""
    if state.t >= config.d:
        raise ValueError(f"cycle limit d={config.d} already reached")
    lo, hi = objectives.domain(config.kind)
    kind_id = objectives.KIND_IDS[config.kind]
    x_rep, y_rep, f_total = kernels.run_cycle(
        kind_id,
        state.net.indptr,
        state.net.indices,
        state.S,
        state.x_actual,
        state.future_mask,
        lo, hi,
        config.tau, config.rho, config.omega, config.n_inner,
        state.agent_rngs,
        DESIGN_REFINE_RTOL,
    )
    state.S = x_rep
    state.y_reported = y_rep
    state.t += 1
    state.F_history.append(f_total)
    return state


def run_execution(config: SystemConfig) -> ExecutionResult:
    """Cycle until convergence or the cycle limit d."""
    state = initialize_system(config)
    converged = False
    while state.t < config.d and not converged:
        run_cycle(state, config)
        converged = check_convergence(state.F_history, config.epsilon, state.t)
    return ExecutionResult(
        N=state.t,
        F_final=state.F_history[-1],
        converged=converged,
        F_history=tuple(state.F_history),
    )
