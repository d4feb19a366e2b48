"""The compiled kernel and its pure-Python twin must agree bit for bit."""

import numpy as np
import pytest

from codev import _kernel_py, annealing, engine, kernels, objectives
from codev.engine import SystemConfig

compiled = pytest.importorskip("codev._kernel")


def pair_of_rngs(seed):
    return (
        np.random.Generator(np.random.PCG64(seed)),
        np.random.Generator(np.random.PCG64(seed)),
    )


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "python")


def test_polish_constants_in_sync():
    assert compiled.POLISH_SCALE_DIV == annealing.POLISH_SCALE_DIV
    assert compiled.POLISH_MIN_SCALE_REL == annealing.POLISH_MIN_SCALE_REL
    assert compiled.POLISH_MAX_EVALS == annealing.POLISH_MAX_EVALS


def test_eval_vec_bitwise_identical():
    rng = np.random.Generator(np.random.PCG64(0))
    for kind, name in enumerate(objectives.KINDS):
        lo, hi = objectives.domain(name)
        for dim in (1, 2, 3, 7, 20):
            for _ in range(50):
                v = rng.uniform(lo, hi, size=dim)
                assert compiled.eval_vec(kind, v) == _kernel_py.eval_vec(kind, v)


def test_anneal_slice_bitwise_identical():
    for kind, name in enumerate(objectives.KINDS):
        lo, hi = objectives.domain(name)
        for seed in (1, 17, 2024):
            r1, r2 = pair_of_rngs(seed)
            nb = [0.4 * lo, 0.1 * hi, -0.7]
            a = compiled.anneal_slice(kind, nb, lo, hi, 0.1, 2.62, 2, 40, r1)
            b = _kernel_py.anneal_slice(kind, nb, lo, hi, 0.1, 2.62, 2, 40, r2)
            assert a == b
            # streams fully aligned afterwards
            assert r1.random() == r2.random()


def test_design_slice_bitwise_identical():
    for kind, name in enumerate(objectives.KINDS):
        lo, hi = objectives.domain(name)
        for seed in (3, 99, 31415):
            r1, r2 = pair_of_rngs(seed)
            nb = [0.25 * hi, 0.5 * lo]
            a = compiled.design_slice(kind, nb, lo, hi, 0.1, 2.62, 1, 50, r1,
                                      0.3 * hi, 0.3)
            b = _kernel_py.design_slice(kind, nb, lo, hi, 0.1, 2.62, 1, 50, r2,
                                        0.3 * hi, 0.3)
            assert a == b
            assert r1.random() == r2.random()


def test_run_cycle_bitwise_identical():
    config = SystemConfig(n=25, kind="levy", p_t=0.6, epsilon=1.0, p_e=0.5, seed=8)
    sa = engine.initialize_system(config)
    sb = engine.initialize_system(config)
    lo, hi = objectives.domain(config.kind)
    kid = objectives.KIND_IDS[config.kind]
    for _ in range(3):
        outa = compiled.run_cycle(
            kid, sa.net.indptr, sa.net.indices, sa.S, sa.x_actual, sa.future_mask,
            lo, hi, config.tau, config.rho, config.omega, config.n_inner,
            sa.agent_rngs, 0.3,
        )
        outb = _kernel_py.run_cycle(
            kid, sb.net.indptr, sb.net.indices, sb.S, sb.x_actual, sb.future_mask,
            lo, hi, config.tau, config.rho, config.omega, config.n_inner,
            sb.agent_rngs, 0.3,
        )
        assert outa[0].tolist() == outb[0].tolist()
        assert outa[1].tolist() == outb[1].tolist()
        assert outa[2] == outb[2]
        assert sa.x_actual.tolist() == sb.x_actual.tolist()
        sa.S = outa[0]
        sb.S = outb[0]


def test_execution_identical_across_backends(monkeypatch):
    config = SystemConfig(n=20, kind="ackley", p_t=0.3, epsilon=1.0, p_e=0.5, seed=13)
    with_compiled = engine.run_execution(config)
    monkeypatch.setattr(kernels, "run_cycle", _kernel_py.run_cycle)
    with_python = engine.run_execution(config)
    assert with_compiled == with_python


def test_forced_backend_env(monkeypatch):
    monkeypatch.setenv("CODEV_BACKEND", "nonsense")
    with pytest.raises(kernels.BackendUnavailableError):
        kernels._select()
    monkeypatch.setenv("CODEV_BACKEND", "python")
    assert kernels._select().BACKEND_NAME == "python"
    monkeypatch.setenv("CODEV_BACKEND", "compiled")
    assert kernels._select().BACKEND_NAME == "compiled"
