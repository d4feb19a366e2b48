"""Command-line entry point.

Subcommands: `run` (single execution -> JSON), `sweep` (grid from a JSON spec
-> CSV), `table1` (the built-in sensitivity sweep at full or desk scale),
`demo2` (two-agent trace -> CSV), and `netstats` (network generation and
statistics). Exit codes: 0 success, 2 validation error, 3 I/O error,
4 internal error. CODEV_PARALLELISM sets the default worker count when
--parallelism is absent.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import engine, experiment, kernels, netgen, objectives
from .engine import ConfigError, SystemConfig

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_INTERNAL = 4


def _default_parallelism() -> int:
    env = os.environ.get("CODEV_PARALLELISM")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _config_from_args(args) -> SystemConfig:
    base: dict = {}
    if args.config:
        base = json.loads(Path(args.config).read_text())
    overrides = {
        "n": args.n, "kind": args.objective, "p_t": args.p_t,
        "epsilon": args.epsilon, "p_e": args.p_e, "seed": args.seed,
        "h": args.h, "d": args.d, "tau": args.tau, "rho": args.rho,
        "omega": args.omega, "n_inner": args.n_inner,
        "estimation_method": args.estimation_method,
    }
    for key, value in overrides.items():
        if value is not None:
            base[key] = value
    missing = [k for k in ("n", "kind", "p_t", "epsilon", "p_e", "seed")
               if k not in base]
    if missing:
        raise ConfigError(f"missing required config fields: {', '.join(missing)}")
    return SystemConfig(**base)


def _write_text(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_run(args) -> int:
    config = _config_from_args(args)
    result = engine.run_execution(config)
    _write_text(args.output, result.to_json(config))
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = experiment.SweepSpec.load(args.spec)
    summary = experiment.run_sweep(spec, args.parallelism, args.output)
    print(json.dumps(summary))
    return EXIT_OK


def cmd_table1(args) -> int:
    spec = experiment.table1_spec(args.scale, args.master_seed)
    planned = spec.n_combinations * spec.replications
    print(f"{spec.n_combinations} combinations x {spec.replications} "
          f"replications = {planned} records -> {args.output}")
    summary = experiment.run_sweep(spec, args.parallelism, args.output)
    print(json.dumps(summary))
    return EXIT_OK


def cmd_demo2(args) -> int:
    """Two-agent system on the asymmetric objective, full per-cycle trace."""
    config = SystemConfig(
        n=2, kind=objectives.LEVY, p_t=0.0, epsilon=args.epsilon, p_e=1.0,
        seed=args.seed, h=1,
    )
    state = engine.initialize_system(config)
    rows = [(state.t, float(state.S[0]), float(state.S[1]),
             float(state.y_reported[0]), float(state.y_reported[1]),
             state.F_history[-1])]
    converged = False
    while state.t < config.d and not converged:
        engine.run_cycle(state, config)
        converged = engine.check_convergence(
            state.F_history, config.epsilon, state.t
        )
        rows.append((state.t, float(state.S[0]), float(state.S[1]),
                     float(state.y_reported[0]), float(state.y_reported[1]),
                     state.F_history[-1]))
    lines = ["t,x1,x2,f1,f2,F"]
    for t, x1, x2, f1, f2, f_sys in rows:
        lines.append(f"{t},{x1!r},{x2!r},{f1!r},{f2!r},{f_sys!r}")
    _write_text(args.output, "\n".join(lines) + "\n")
    if args.output:
        print(f"N={state.t} converged={str(converged).lower()} "
              f"F0={rows[0][5]!r} F_final={rows[-1][5]!r}")
    return EXIT_OK


def cmd_netstats(args) -> int:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed)))
    net = netgen.generate_network(args.n, args.h, args.p_t, rng)
    stats = netgen.network_stats(net)
    doc = {
        "n": net.n,
        "h": args.h,
        "p_t": args.p_t,
        "seed": args.seed,
        "edges": len(net.edges),
        "connected": net.is_connected(),
        "max_degree": stats["max_degree"],
        "mean_clustering": stats["mean_clustering"],
        "powerlaw_exponent": netgen.fit_powerlaw_exponent(
            stats["degree_sequence"], k_min=min(args.h, 2)
        ),
        "degree_sequence": stats["degree_sequence"],
    }
    if args.edges_csv:
        netgen.write_edge_csv(net, args.edges_csv)
    if args.dsm_csv:
        netgen.write_dsm_csv(net, args.dsm_csv)
    _write_text(args.output, json.dumps(doc, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codev",
        description="Simulate iterative design cycles of coupled artifacts "
                    "on a generated interaction network.",
    )
    parser.add_argument("--version", action="version",
                        version=f"codev (backend: {kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="one execution, JSON result")
    run_p.add_argument("--config", help="JSON file with config fields")
    run_p.add_argument("--objective", choices=objectives.KINDS)
    run_p.add_argument("--n", type=int)
    run_p.add_argument("--p-t", dest="p_t", type=float)
    run_p.add_argument("--epsilon", type=float)
    run_p.add_argument("--p-e", dest="p_e", type=float)
    run_p.add_argument("--seed", type=int)
    run_p.add_argument("--h", type=int)
    run_p.add_argument("--d", type=int)
    run_p.add_argument("--tau", type=float)
    run_p.add_argument("--rho", type=float)
    run_p.add_argument("--omega", type=int)
    run_p.add_argument("--n-inner", dest="n_inner", type=int)
    run_p.add_argument("--estimation-method", dest="estimation_method",
                       choices=list(experiment.ESTIMATION_METHODS))
    run_p.add_argument("--output", help="write JSON here instead of stdout")
    run_p.set_defaults(func=cmd_run)

    sweep_p = sub.add_parser("sweep", help="run a sweep from a JSON spec")
    sweep_p.add_argument("--spec", required=True)
    sweep_p.add_argument("--output", required=True)
    sweep_p.add_argument("--parallelism", type=int,
                         default=_default_parallelism())
    sweep_p.set_defaults(func=cmd_sweep)

    t1_p = sub.add_parser("table1", help="built-in sensitivity sweep")
    t1_p.add_argument("--output", required=True)
    t1_p.add_argument("--scale", choices=("full", "desk"), default="desk")
    t1_p.add_argument("--parallelism", type=int,
                      default=_default_parallelism())
    t1_p.add_argument("--master-seed", dest="master_seed", type=int,
                      default=experiment.DEFAULT_MASTER_SEED)
    t1_p.set_defaults(func=cmd_table1)

    demo_p = sub.add_parser("demo2", help="two-agent trace on the asymmetric "
                                          "objective")
    demo_p.add_argument("--seed", type=int, default=0)
    demo_p.add_argument("--epsilon", type=float, default=0.01)
    demo_p.add_argument("--output", help="trace CSV path (default stdout)")
    demo_p.set_defaults(func=cmd_demo2)

    net_p = sub.add_parser("netstats", help="generate a network and report "
                                            "statistics")
    net_p.add_argument("--n", type=int, required=True)
    net_p.add_argument("--h", type=int, default=2)
    net_p.add_argument("--p-t", dest="p_t", type=float, default=0.0)
    net_p.add_argument("--seed", type=int, default=0)
    net_p.add_argument("--edges-csv", help="also write the edge list here")
    net_p.add_argument("--dsm-csv", help="also write the dense 0/1 matrix here")
    net_p.add_argument("--output", help="write JSON here instead of stdout")
    net_p.set_defaults(func=cmd_netstats)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
