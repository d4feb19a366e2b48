"""Artifact interaction network: preferential attachment with tunable triads.

Starting from h isolated seed nodes, each new node i attaches h edges: the
first by preferential attachment (target probability proportional to degree,
uniform while all degrees are zero), and each of the remaining h-1 either by
triad formation with probability p_t (connect to a uniform-random neighbor of
the most recent preferential-attachment target, closing a triangle) or by
preferential attachment again. A draw that would self-loop or duplicate one
of i's edges falls back to a uniform draw among existing non-neighbors of i,
which keeps the edge count at exactly h*(n-h) and the graph simple and
connected.

Preferential attachment samples uniformly from the running list of edge
endpoints, so the pool can briefly include node i itself during its own turn;
the fallback rule absorbs those draws.
"""

from __future__ import annotations

import csv
import math
from typing import Iterable, Sequence

import numpy as np


class ArtifactNetwork:
    """Simple undirected graph over n artifacts, immutable after construction."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        canon = set()
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside node range 0..{n - 1}")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in canon:
                raise ValueError(f"duplicate edge ({a}, {b})")
            canon.add((a, b))
            nbrs[a].add(b)
            nbrs[b].add(a)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(canon))
        self.neighbor_lists: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(s)) for s in nbrs
        )
        self.degrees = np.array([len(s) for s in nbrs], dtype=np.int64)
        # CSR view consumed by the cycle kernels
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(self.degrees, out=self.indptr[1:])
        self.indices = np.fromiter(
            (j for row in self.neighbor_lists for j in row),
            dtype=np.int64,
            count=int(self.indptr[-1]),
        )

    def adjacency(self) -> np.ndarray:
        """Dense boolean adjacency matrix."""
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            a[u, v] = True
            a[v, u] = True
        return a

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.neighbor_lists[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n


def generate_network(
    n: int, h: int, p_t: float, rng: np.random.Generator
) -> ArtifactNetwork:
    """Generate the artifact network for n nodes, h edges per new node.

    Requires n > h >= 1 and 0 <= p_t <= 1. The result has exactly h*(n-h)
    edges, is simple, undirected, and connected, and is a deterministic
    function of (n, h, p_t, rng state).
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    if n <= h:
        raise ValueError(f"n must exceed h, got n={n}, h={h}")
    if not 0.0 <= p_t <= 1.0:
        raise ValueError(f"p_t must be in [0, 1], got {p_t}")

    nbrs: list[set[int]] = [set() for _ in range(n)]
    edges: list[tuple[int, int]] = []
    endpoints: list[int] = []  # each edge endpoint once; degree-proportional pool

    def fallback(i: int) -> int:
        cands = [v for v in range(i) if v not in nbrs[i]]
        return cands[rng.integers(len(cands))]

    def pa_target(i: int) -> int:
        if not endpoints:
            j = int(rng.integers(i))
        else:
            j = endpoints[rng.integers(len(endpoints))]
        if j == i or j in nbrs[i]:
            j = fallback(i)
        return j

    def add_edge(i: int, j: int) -> None:
        edges.append((j, i) if j < i else (i, j))
        nbrs[i].add(j)
        nbrs[j].add(i)
        endpoints.append(i)
        endpoints.append(j)

    for i in range(h, n):
        target = pa_target(i)
        add_edge(i, target)
        for _ in range(h - 1):
            if rng.random() < p_t:
                pool = sorted(nbrs[target])
                cand = pool[rng.integers(len(pool))]
                if cand == i or cand in nbrs[i]:
                    cand = fallback(i)
                add_edge(i, cand)
            else:
                target = pa_target(i)
                add_edge(i, target)
    return ArtifactNetwork(n, edges)


def network_stats(net: ArtifactNetwork) -> dict:
    """Degree sequence, mean local clustering coefficient, max degree."""
    seq = [int(d) for d in net.degrees]
    total = 0.0
    for i in range(net.n):
        k = seq[i]
        if k < 2:
            continue
        row = net.neighbor_lists[i]
        closed = 0
        for a_idx in range(k):
            sa = row[a_idx]
            na = net.neighbor_lists[sa]
            for b_idx in range(a_idx + 1, k):
                if row[b_idx] in na:
                    closed += 1
        total += 2.0 * closed / (k * (k - 1))
    return {
        "degree_sequence": seq,
        "mean_clustering": total / net.n if net.n else 0.0,
        "max_degree": int(max(seq)) if seq else 0,
    }


def fit_powerlaw_exponent(degrees: Sequence[int], k_min: int = 2) -> float:
    """Maximum-likelihood power-law exponent of the degree tail.

    Discrete-data approximation: alpha = 1 + m / sum(ln(k / (k_min - 0.5)))
    over the m degrees >= k_min.
    """
    tail = [k for k in degrees if k >= k_min]
    if not tail:
        raise ValueError(f"no degrees >= k_min={k_min}")
    s = sum(math.log(k / (k_min - 0.5)) for k in tail)
    if s <= 0.0:
        raise ValueError("degenerate degree tail, cannot fit exponent")
    return 1.0 + len(tail) / s


def write_edge_csv(net: ArtifactNetwork, path) -> None:
    """Edge list as `src,dst` rows, ascending."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["src", "dst"])
        for u, v in net.edges:
            w.writerow([u, v])


def write_dsm_csv(net: ArtifactNetwork, path) -> None:
    """Dense 0/1 design-structure-matrix rows."""
    a = net.adjacency().astype(int)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        for row in a:
            w.writerow(list(row))
