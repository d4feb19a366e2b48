"""The four coupled objective functions and their evaluation domains.

Each artifact's performance is a scalar function of its own decision variable
and those of its network neighbors, evaluated as one vector with the own
variable first and neighbors in ascending node order. All four functions are
defined for any dimension >= 1, are non-negative, and attain 0 at a known
optimum. Three are permutation-symmetric; the Levy function is not, which
makes the argument ordering semantically load-bearing.
"""

from __future__ import annotations

import math
from typing import Sequence

ABSOLUTE_SUM = "absolute-sum"
SPHERE = "sphere"
ACKLEY = "ackley"
LEVY = "levy"

KINDS = (ABSOLUTE_SUM, SPHERE, ACKLEY, LEVY)

# integer ids shared with the compiled kernel
KIND_IDS = {ABSOLUTE_SUM: 0, SPHERE: 1, ACKLEY: 2, LEVY: 3}

_DOMAINS = {
    ABSOLUTE_SUM: (-10.0, 10.0),
    SPHERE: (-5.12, 5.12),
    ACKLEY: (-32.768, 32.768),
    LEVY: (-10.0, 10.0),
}

_ACKLEY_C1 = 20.0
_ACKLEY_C2 = 0.2
# third Ackley constant is 2*pi, inlined below


class DomainViolationError(ValueError):
    """A design-vector component lies outside the objective's domain."""

    def __init__(self, kind: str, index: int, value: float):
        lo, hi = _DOMAINS[kind]
        super().__init__(
            f"component {index} = {value!r} outside {kind} domain [{lo}, {hi}]"
        )
        self.kind = kind
        self.index = index
        self.value = value


def domain(kind: str) -> tuple[float, float]:
    """Closed evaluation interval for one component of `kind`."""
    try:
        return _DOMAINS[kind]
    except KeyError:
        raise ValueError(f"unknown objective kind {kind!r}") from None


def optimum(kind: str, dim: int) -> tuple[list[float], float]:
    """Global minimizer of `kind` in `dim` dimensions and its value (0)."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if kind == LEVY:
        return [1.0] * dim, 0.0
    if kind in _DOMAINS:
        return [0.0] * dim, 0.0
    raise ValueError(f"unknown objective kind {kind!r}")


def eval_vector(kind_id: int, v: Sequence[float]) -> float:
    """Canonical evaluation: left-to-right accumulation over the vector.

    This is the reference for the compiled kernel; both must produce
    bit-identical results, so the floating-point operation order here is a
    contract, not a style choice.
    """
    d = len(v)
    if kind_id == 0:  # absolute sum
        acc = 0.0
        for m in range(d):
            acc += math.fabs(v[m])
        return acc
    if kind_id == 1:  # sphere
        acc = 0.0
        for m in range(d):
            acc += v[m] * v[m]
        return acc
    if kind_id == 2:  # ackley
        s2 = 0.0
        sc = 0.0
        for m in range(d):
            s2 += v[m] * v[m]
            sc += math.cos(2.0 * math.pi * v[m])
        t1 = -_ACKLEY_C1 * math.exp(-_ACKLEY_C2 * math.sqrt(s2 / d))
        t2 = math.exp(sc / d)
        return t1 - t2 + math.e + _ACKLEY_C1
    if kind_id == 3:  # levy
        w = 1.0 + (v[0] - 1.0) / 4.0
        s = math.sin(math.pi * w)
        acc = s * s
        for m in range(d - 1):
            w = 1.0 + (v[m] - 1.0) / 4.0
            s = math.sin(math.pi * w + 1.0)
            acc += (w - 1.0) * (w - 1.0) * (1.0 + 10.0 * s * s)
        w = 1.0 + (v[d - 1] - 1.0) / 4.0
        s = math.sin(2.0 * math.pi * w)
        acc += (w - 1.0) * (w - 1.0) * (1.0 + s * s)
        return acc
    raise ValueError(f"unknown objective kind id {kind_id}")


def evaluate(kind: str, x: Sequence[float]) -> float:
    """Objective value of design vector `x` (own variable first).

    Raises DomainViolationError naming the first offending component.
    """
    lo, hi = domain(kind)
    if len(x) < 1:
        raise ValueError("design vector must have at least one component")
    for i, xi in enumerate(x):
        if not (lo <= xi <= hi):
            raise DomainViolationError(kind, i, xi)
    return eval_vector(KIND_IDS[kind], x)
