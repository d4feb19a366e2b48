#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Runs the same seeded executions under each backend (selected at import time
via CODEV_BACKEND in a subprocess), checks the results are identical, and
reports wall times and the speedup.

Usage:
    python benchmarks/bench_backends.py [--n 200] [--cycles per-case runs]
"""

import argparse
import json
import os
import subprocess
import sys
import time

CASES = [
    dict(n=100, kind="sphere", p_t=0.5, epsilon=0.5, p_e=0.5, seed=11),
    dict(n=200, kind="levy", p_t=0.9, epsilon=0.5, p_e=0.5, seed=12),
    dict(n=200, kind="ackley", p_t=0.0, epsilon=1.0, p_e=1.0, seed=13),
]

WORKER = r"""
import json, sys, time
import codev
from codev.engine import SystemConfig, run_execution

case = json.loads(sys.argv[1])
start = time.perf_counter()
result = run_execution(SystemConfig(**case))
wall = time.perf_counter() - start
print(json.dumps({
    "backend": codev.BACKEND,
    "wall_s": wall,
    "result": result.to_json(indent=None),
}))
"""


def run_case(case, backend):
    env = dict(os.environ, CODEV_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps(case)],
        capture_output=True, text=True, env=env, check=True,
    )
    doc = json.loads(out.stdout)
    assert doc["backend"] == backend, doc["backend"]
    return doc


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.parse_args()
    print(f"{'case':<42}{'compiled':>10}{'python':>10}{'speedup':>9}")
    total = {"compiled": 0.0, "python": 0.0}
    for case in CASES:
        runs = {b: run_case(case, b) for b in ("compiled", "python")}
        if runs["compiled"]["result"] != runs["python"]["result"]:
            raise SystemExit(f"backend results differ for {case}")
        label = f"{case['kind']} n={case['n']} eps={case['epsilon']}"
        tc = runs["compiled"]["wall_s"]
        tp = runs["python"]["wall_s"]
        total["compiled"] += tc
        total["python"] += tp
        print(f"{label:<42}{tc:>9.3f}s{tp:>9.3f}s{tp / tc:>8.1f}x")
    print(f"{'total':<42}{total['compiled']:>9.3f}s{total['python']:>9.3f}s"
          f"{total['python'] / total['compiled']:>8.1f}x")
    print("results identical across backends: yes")


if __name__ == "__main__":
    main()
