"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one PASS line (visible with -s or in captured output);
a failing criterion fails its test."""

import statistics

import numpy as np
import pytest
from scipy import stats as scipy_stats

from codev import engine, experiment, netgen, objectives
from codev.engine import SystemConfig, check_convergence, run_execution
from codev.experiment import SweepSpec, run_sweep, table1_spec

EPS_LEVELS = (0.01, 1.0, 10.0)


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def test_grid_cardinality():
    """Criterion 1: the full variable grid enumerates exactly as published."""
    spec = table1_spec("full")
    combos = experiment.enumerate_combinations(spec)
    assert len(combos) == 13_552
    assert len(combos) * spec.replications == 1_355_200
    print("PASS grid-cardinality: 13,552 combinations x 100 = 1,355,200 records")


def test_objective_exactness():
    """Criterion 2: optima evaluate to 0 within 1e-12 at dims 1, 2, 10;
    10,000 random in-domain samples per kind are non-negative."""
    for kind in objectives.KINDS:
        for dim in (1, 2, 10):
            x, _ = objectives.optimum(kind, dim)
            assert abs(objectives.evaluate(kind, x)) <= 1e-12
        lo, hi = objectives.domain(kind)
        rng = make_rng(20_000 + objectives.KIND_IDS[kind])
        samples = rng.uniform(lo, hi, size=(10_000, 3))
        for row in samples:
            assert objectives.evaluate(kind, row.tolist()) >= 0.0
    print("PASS objective-exactness: optima = 0 (1e-12); 40,000 samples >= 0")


def test_network_law():
    """Criterion 3: exact edge count, simplicity, connectivity; scale-free
    tail exponent within [1.5, 3.5]."""
    for n in (50, 100, 500):
        for seed in range(50):
            net = netgen.generate_network(n, 2, 0.5, make_rng(seed))
            assert len(net.edges) == 2 * (n - 2)
            assert len(set(net.edges)) == len(net.edges)
            assert all(u != v for u, v in net.edges)
            assert net.is_connected()
    alphas = [
        netgen.fit_powerlaw_exponent(
            [int(d) for d in netgen.generate_network(1000, 2, 0.9, make_rng(s)).degrees],
            k_min=2,
        )
        for s in range(20)
    ]
    alpha = statistics.median(alphas)
    assert 1.5 <= alpha <= 3.5
    print(f"PASS network-law: |E| = 2(n-2) exact; median tail exponent {alpha:.3f}")


def test_convergence_contract():
    """Criterion 4: hand-built histories plus 1,000 random histories against
    a direct re-evaluation oracle; exact agreement."""
    assert check_convergence([9, 5, 5, 5, 5], 0.01, 4) is True
    assert check_convergence([9, 5, 5, 5], 0.01, 3) is False
    assert check_convergence([0, 10, 0, 10, 0], 5.0, 4) is False
    rng = make_rng(404)
    for _ in range(1000):
        length = int(rng.integers(2, 12))
        hist = rng.uniform(-1e4, 1e4, size=length).tolist()
        t = int(rng.integers(1, length))
        eps = float(rng.uniform(1e-6, 1e4))
        expected = t >= 4 and (
            abs(hist[t] - hist[t - 1])
            + abs(hist[t] - hist[t - 2])
            + abs(hist[t] - hist[t - 3])
        ) / 3.0 < eps
        assert check_convergence(hist, eps, t) == expected
    # N bounds on real executions
    for seed in range(5):
        result = run_execution(SystemConfig(n=10, kind="sphere", p_t=0.0,
                                            epsilon=1e9, p_e=0.5, seed=seed))
        assert result.N == 4 and result.converged
    print("PASS convergence-contract: hand cases + 1,000 random histories exact")


def test_determinism(tmp_path):
    """Criterion 5: byte-identical reruns; sweep records independent of the
    worker count (timing column excluded: it is a measurement)."""
    config = SystemConfig(n=50, kind="ackley", p_t=0.5, epsilon=1.0, p_e=0.5, seed=99)
    a = run_execution(config)
    b = run_execution(config)
    assert a.to_json(config).encode() == b.to_json(config).encode()

    spec = SweepSpec(
        objectives=("sphere", "levy"), n=(10,), p_t=(0.5,), epsilon=(5.0,),
        p_e=(0.0, 0.5, 1.0), replications=5, master_seed=7, d=30,
    )
    assert spec.n_combinations == 6
    serial, parallel = tmp_path / "p1.csv", tmp_path / "p16.csv"
    run_sweep(spec, parallelism=1, output_path=serial)
    run_sweep(spec, parallelism=16, output_path=parallel)

    def canon(path):
        rows = [line.split(",") for line in path.read_text().strip().splitlines()[1:]]
        return sorted(tuple(r[:-1]) for r in rows)

    assert canon(serial) == canon(parallel)
    print("PASS determinism: byte-identical rerun; 6x5 sweep equal at "
          "parallelism 1 vs 16")


def test_result1_cycles_grow_with_system_size(desk_records):
    """Criterion 6: within each objective, Spearman correlation of N with n
    is positive at p < 0.01 on the desk sweep."""
    lines = []
    for kind in objectives.KINDS:
        rows = [r for r in desk_records if r["objective"] == kind]
        assert len(rows) == 1620
        rho, p = scipy_stats.spearmanr([r["n"] for r in rows],
                                       [r["N"] for r in rows])
        assert rho > 0, f"{kind}: rho={rho}"
        assert p < 0.01, f"{kind}: p={p}"
        lines.append(f"{kind} rho={rho:.3f} p={p:.2e}")
    print("PASS result-1: " + "; ".join(lines))


def test_result4_threshold_tradeoff(desk_records):
    """Criterion 7: within each objective, median N strictly decreases and
    median F_final weakly increases across the threshold levels."""
    lines = []
    for kind in objectives.KINDS:
        med_n, med_f = [], []
        for eps in EPS_LEVELS:
            rows = [r for r in desk_records
                    if r["objective"] == kind and r["epsilon"] == eps]
            assert len(rows) == 540
            med_n.append(statistics.median(r["N"] for r in rows))
            med_f.append(statistics.median(r["F_final"] for r in rows))
        assert med_n[0] > med_n[1] > med_n[2], f"{kind}: median N {med_n}"
        assert med_f[0] <= med_f[1] <= med_f[2], f"{kind}: median F {med_f}"
        lines.append(f"{kind} N={med_n} F={[round(f, 3) for f in med_f]}")
    print("PASS result-4: " + "; ".join(lines))


def test_fig5_two_agent_demo():
    """Criterion 8: 200 seeds of the two-agent asymmetric system finish at or
    below their starting performance in at least 90% of runs."""
    hits = 0
    for seed in range(200):
        config = SystemConfig(n=2, kind="levy", p_t=0.0, epsilon=0.01,
                              p_e=1.0, seed=seed, h=1)
        result = run_execution(config)
        if result.F_history[-1] <= result.F_history[0]:
            hits += 1
    rate = hits / 200
    assert rate >= 0.90
    print(f"PASS fig5-demo: F(N) <= F(0) in {rate:.1%} of 200 seeds")
