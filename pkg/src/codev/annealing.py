"""Bounded one-dimensional search used by agents each design cycle.

The search has two stages. First, a stochastic chain: starting from a
uniform-random point in the interval, omega outer iterations of n_inner
candidate moves each, at temperature T(k) = tau * (2^(rho-1) - 1) /
((1+k)^(rho-1) - 1) for outer iteration k >= 1 (so T(1) = tau). Moves are
heavy-tailed (standard Cauchy via inverse CDF) scaled by the temperature in
units of the interval width, and reflected back into the interval;
improvements are always accepted, worsening moves with Metropolis
probability exp(-df/T). Second, a deterministic refinement stage: a
shrinking-step pattern search (step width/8 halving down to 1e-9 * width,
hard evaluation cap) that keeps moves improving the objective by more than
a tolerance.

Two entry points share those stages. `anneal` is the plain minimizer: it
refines the best point the chain ever evaluated at full precision
(tolerance 0) and returns it. `design_search` is the per-cycle design step:
it refines the chain's final accepted state at a tolerance relative to the
incumbent design's current performance, then accepts or rejects the
resulting candidate against the incumbent, Metropolis style, at that same
effort scale. Improvements are always kept; regressions survive with
probability exp(-regression / effort scale). This makes a system of agents
relax geometrically instead of snapping to per-cycle optima, while still
letting occasional worse designs through.

This module is the pure-Python reference; the compiled kernel inlines the
same loops with the objective evaluation fused in, and must match it bit
for bit (consuming one uniform for the start, one per candidate, one more
per worsening chain move, and one per worsening design candidate, from the
same random stream).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


class AnnealingAbortError(RuntimeError):
    """The objective returned a non-finite value during the search."""


# refinement-stage constants, mirrored in the compiled kernel
POLISH_SCALE_DIV = 8.0
POLISH_MIN_SCALE_REL = 1e-9
POLISH_MAX_EVALS = 200

# default relative effort scale of the per-cycle design step: refinement and
# design acceptance both stop caring below this fraction of the incumbent's
# current objective value
DESIGN_REFINE_RTOL = 0.3


@dataclass(frozen=True)
class AnnealParams:
    """Search budget and schedule constants."""

    tau: float = 0.1      # initial temperature
    rho: float = 2.62     # visiting/cooling exponent, > 1
    omega: int = 1        # outer iterations (one temperature step each)
    n_inner: int = 50     # candidate evaluations per outer iteration

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError(f"tau must be > 0, got {self.tau}")
        if not self.rho > 1:
            raise ValueError(f"rho must be > 1, got {self.rho}")
        if self.omega < 1:
            raise ValueError(f"omega must be >= 1, got {self.omega}")
        if self.n_inner < 1:
            raise ValueError(f"n_inner must be >= 1, got {self.n_inner}")


def reflect(y: float, lo: float, hi: float) -> float:
    """Fold `y` into [lo, hi] by reflection at the bounds."""
    if lo <= y <= hi:
        return y
    w = hi - lo
    if w <= 0.0:
        return lo
    r = math.fmod(y - lo, 2.0 * w)
    if r < 0.0:
        r += 2.0 * w
    if r > w:
        r = 2.0 * w - r
    x = lo + r
    if x < lo:
        x = lo
    if x > hi:
        x = hi
    return x


def _check(value: float, at: float) -> float:
    if not math.isfinite(value):
        raise AnnealingAbortError(f"objective returned {value!r} at x={at!r}")
    return value


def _chain(objective, lo, hi, params, rng):
    """Stochastic stage; returns (x_end, f_end, x_best, f_best)."""
    u = rng.random()
    x = lo + u * (hi - lo)
    fx = _check(objective(x), x)
    x_best, f_best = x, fx
    width = hi - lo
    expo = params.rho - 1.0
    t_num = params.tau * (2.0 ** expo - 1.0)
    for k in range(1, params.omega + 1):
        temp = t_num / ((1.0 + k) ** expo - 1.0)
        for _ in range(params.n_inner):
            u = rng.random()
            cand = reflect(x + temp * width * math.tan(math.pi * (u - 0.5)), lo, hi)
            fc = _check(objective(cand), cand)
            if fc <= fx:
                accepted = True
            elif temp > 0.0:
                accepted = rng.random() < math.exp(-(fc - fx) / temp)
            else:
                accepted = False
            if accepted:
                x, fx = cand, fc
            if fc < f_best:
                x_best, f_best = cand, fc
    return x, fx, x_best, f_best


def polish(
    objective: Callable[[float], float],
    x: float,
    fx: float,
    lo: float,
    hi: float,
    f_tol: float = 0.0,
) -> tuple[float, float, int]:
    """Deterministic shrinking-step refinement around an incumbent point.

    Tries +step first, retrying the same scale after every kept move, then
    -step, halving the scale when neither clears the improvement tolerance.
    Returns (x, fx, evals)."""
    width = hi - lo
    scale = width / POLISH_SCALE_DIV
    min_scale = width * POLISH_MIN_SCALE_REL
    evals = 0
    while scale > min_scale and evals < POLISH_MAX_EVALS:
        cand = x + scale
        if cand > hi:
            cand = hi
        fc = _check(objective(cand), cand)
        evals += 1
        if fx - fc > f_tol:
            x, fx = cand, fc
            continue
        if evals >= POLISH_MAX_EVALS:
            break
        cand = x - scale
        if cand < lo:
            cand = lo
        fc = _check(objective(cand), cand)
        evals += 1
        if fx - fc > f_tol:
            x, fx = cand, fc
            continue
        scale *= 0.5
    return x, fx, evals


def anneal(
    objective: Callable[[float], float],
    interval: tuple[float, float],
    params: AnnealParams,
    rng: np.random.Generator,
) -> tuple[float, float, int]:
    """Minimize a scalar objective over a closed interval.

    Returns (x_best, f_best, evals). evals counts every objective call: one
    for the uniform-random starting point, omega * n_inner chain candidates,
    then the refinement stage's calls.
    """
    lo, hi = interval
    if not lo <= hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    _, _, x_best, f_best = _chain(objective, lo, hi, params, rng)
    x_best, f_best, polish_evals = polish(objective, x_best, f_best, lo, hi)
    return x_best, f_best, 1 + params.omega * params.n_inner + polish_evals


def design_search(
    objective: Callable[[float], float],
    interval: tuple[float, float],
    params: AnnealParams,
    rng: np.random.Generator,
    x_incumbent: float,
    refine_rtol: float = DESIGN_REFINE_RTOL,
) -> tuple[float, float, float, int]:
    """One design-cycle search against an incumbent design.

    Runs the chain, refines its final accepted state at effort scale
    refine_rtol * f(x_incumbent), and keeps the incumbent unless the
    candidate improves on it (always accepted) or survives the Metropolis
    test at that effort scale. Returns (x_new, y_new, y_incumbent, evals).
    """
    lo, hi = interval
    if not lo <= hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    y_inc = _check(objective(x_incumbent), x_incumbent)
    effort = refine_rtol * y_inc
    x_end, f_end, _, _ = _chain(objective, lo, hi, params, rng)
    x_cand, y_cand, polish_evals = polish(objective, x_end, f_end, lo, hi, effort)
    if y_cand <= y_inc:
        accepted = True
    elif effort > 0.0:
        accepted = rng.random() < math.exp(-(y_cand - y_inc) / effort)
    else:
        accepted = False
    if accepted:
        x_new, y_new = x_cand, y_cand
    else:
        x_new, y_new = x_incumbent, y_inc
    return x_new, y_new, y_inc, 2 + params.omega * params.n_inner + polish_evals
