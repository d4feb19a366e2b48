"""Parameter-sweep harness: enumerate the variable grid, run replicated
executions reproducibly (and in parallel), and persist one CSV row each.

Every record's payload is a pure function of (sweep spec, master seed): each
execution gets its own seed derived by hashing (master_seed, combo_index,
replication_index), so the worker count and completion order never change a
result. Writes stream append-only, and a rerun over a partial file executes
only the missing (combo, replication) pairs.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, asdict
from pathlib import Path

from . import objectives
from .agents import METHOD_FUTURE, ESTIMATION_METHODS
from .engine import SystemConfig, run_execution

log = logging.getLogger(__name__)

CSV_HEADER = (
    "combo_index,replication_index,objective,n,p_t,epsilon,p_e,h,d,tau,rho,"
    "omega,n_inner,estimation_method,seed,N,F_final,converged,wall_time_ms"
)
CSV_COLUMNS = CSV_HEADER.split(",")

# the full sensitivity grid and its constants
FULL_GRID = {
    "objectives": list(objectives.KINDS),
    "n": [50, 100, 500, 1000],
    "p_t": [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0],
    "epsilon": [0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 10.0],
    "p_e": [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0],
}

# reduced grid small enough for a desktop run
DESK_GRID = {
    "objectives": list(objectives.KINDS),
    "n": [50, 100, 500],
    "p_t": [0.0, 0.5, 1.0],
    "epsilon": [0.01, 1.0, 10.0],
    "p_e": [0.0, 0.5, 1.0],
}

DEFAULT_MASTER_SEED = 1729


@dataclass(frozen=True)
class SweepSpec:
    """Grid levels, constants, replication count, and the master seed."""

    objectives: tuple[str, ...]
    n: tuple[int, ...]
    p_t: tuple[float, ...]
    epsilon: tuple[float, ...]
    p_e: tuple[float, ...]
    replications: int
    master_seed: int = DEFAULT_MASTER_SEED
    subsample: float = 1.0
    h: int = 2
    d: int = 100
    tau: float = 0.1
    rho: float = 2.62
    omega: int = 1
    n_inner: int = 50
    estimation_method: str = METHOD_FUTURE

    def __post_init__(self):
        for name in ("objectives", "n", "p_t", "epsilon", "p_e"):
            value = getattr(self, name)
            if not isinstance(value, tuple):
                object.__setattr__(self, name, tuple(value))
            if not getattr(self, name):
                raise ValueError(f"sweep level list {name!r} is empty")
        for kind in self.objectives:
            if kind not in objectives.KINDS:
                raise ValueError(f"unknown objective {kind!r}")
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")
        if not 0.0 < self.subsample <= 1.0:
            raise ValueError(f"subsample must be in (0, 1], got {self.subsample}")
        if self.estimation_method not in ESTIMATION_METHODS:
            raise ValueError(f"unknown estimation method {self.estimation_method!r}")

    @property
    def n_combinations(self) -> int:
        return (
            len(self.objectives) * len(self.n) * len(self.p_t)
            * len(self.epsilon) * len(self.p_e)
        )

    def to_json(self) -> str:
        doc = asdict(self)
        for k, v in doc.items():
            if isinstance(v, tuple):
                doc[k] = list(v)
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "SweepSpec":
        doc = json.loads(text)
        return cls(**doc)

    @classmethod
    def load(cls, path) -> "SweepSpec":
        return cls.from_json(Path(path).read_text())


def table1_spec(scale: str = "full", master_seed: int = DEFAULT_MASTER_SEED) -> SweepSpec:
    """The sensitivity-experiment sweep at full scale (100 replications over
    the complete grid) or desk scale (reduced grid, 20 replications)."""
    if scale == "full":
        grid, reps = FULL_GRID, 100
    elif scale == "desk":
        grid, reps = DESK_GRID, 20
    else:
        raise ValueError(f"scale must be 'full' or 'desk', got {scale!r}")
    return SweepSpec(
        objectives=tuple(grid["objectives"]),
        n=tuple(grid["n"]),
        p_t=tuple(grid["p_t"]),
        epsilon=tuple(grid["epsilon"]),
        p_e=tuple(grid["p_e"]),
        replications=reps,
        master_seed=master_seed,
    )


def enumerate_combinations(spec: SweepSpec) -> list[SystemConfig]:
    """Full Cartesian product, lexicographic in (kind, n, p_t, epsilon, p_e).

    combo_index is the position in this list; seeds are filled per
    replication by derive_seed."""
    combos = []
    for kind in spec.objectives:
        for n in spec.n:
            for p_t in spec.p_t:
                for eps in spec.epsilon:
                    for p_e in spec.p_e:
                        combos.append(
                            SystemConfig(
                                n=n, kind=kind, p_t=p_t, epsilon=eps, p_e=p_e,
                                seed=0,
                                h=spec.h, d=spec.d, tau=spec.tau, rho=spec.rho,
                                omega=spec.omega, n_inner=spec.n_inner,
                                estimation_method=spec.estimation_method,
                            )
                        )
    return combos


def _keep_fraction(spec: SweepSpec, combo_index: int, replication_index: int) -> bool:
    """Deterministic row choice for fractional designs: hash-derived uniform
    in [0, 1) compared against the subsample fraction."""
    if spec.subsample >= 1.0:
        return True
    u = derive_seed(spec.master_seed ^ 0x5EED, combo_index, replication_index)
    return u / 2.0**64 < spec.subsample


def derive_seed(master_seed: int, combo_index: int, replication_index: int) -> int:
    """Collision-resistant 64-bit seed for one execution.

    SHA-256 over the fixed-width big-endian triple; stable across platforms
    and independent of how work is scheduled."""
    payload = (
        (master_seed & 0xFFFFFFFFFFFFFFFF).to_bytes(8, "big")
        + combo_index.to_bytes(8, "big")
        + replication_index.to_bytes(8, "big")
    )
    digest = hashlib.sha256(payload).digest()
    return int.from_bytes(digest[:8], "big")


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _record_row(combo_index: int, replication_index: int, config: SystemConfig,
                result, wall_time_ms: float) -> list[str]:
    values = [
        combo_index, replication_index, config.kind, config.n, config.p_t,
        config.epsilon, config.p_e, config.h, config.d, config.tau, config.rho,
        config.omega, config.n_inner, config.estimation_method, config.seed,
        result.N, result.F_final, result.converged, round(wall_time_ms, 3),
    ]
    return [_format_value(v) for v in values]


def _execute_one(task):
    """Worker entry: run one (combo, replication) and format its row."""
    combo_index, replication_index, config_kwargs = task
    config = SystemConfig(**config_kwargs)
    start = time.perf_counter()
    result = run_execution(config)
    wall_ms = (time.perf_counter() - start) * 1e3
    return combo_index, replication_index, _record_row(
        combo_index, replication_index, config, result, wall_ms
    )


def _load_existing(path: Path) -> set[tuple[int, int]]:
    """Keys already present in a partial output file.

    A malformed tail (interrupted write) is dropped by rewriting the valid
    prefix before resuming."""
    done: set[tuple[int, int]] = set()
    rows: list[list[str]] = []
    damaged = False
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != CSV_COLUMNS:
            raise ValueError(
                f"{path} exists but its header does not match the sweep schema"
            )
        for row in reader:
            if len(row) != len(CSV_COLUMNS):
                damaged = True
                break
            rows.append(row)
            done.add((int(row[0]), int(row[1])))
    if damaged:
        log.warning("dropping malformed tail of %s (%d valid rows kept)",
                    path, len(rows))
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS)
            w.writerows(rows)
    return done


def run_sweep(spec: SweepSpec, parallelism: int = 1, output_path="sweep.csv") -> dict:
    """Run every (combination x replication) not already in the output file.

    Returns {"records_written": int, "failures": int, "skipped": int}.
    Per-record failures are logged with their indices and do not stop the
    sweep."""
    if parallelism < 1:
        raise ValueError(f"parallelism must be >= 1, got {parallelism}")
    path = Path(output_path)
    combos = enumerate_combinations(spec)

    done: set[tuple[int, int]] = set()
    if path.exists():
        done = _load_existing(path)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            fh.write(CSV_HEADER + "\n")

    tasks = []
    for combo_index, config in enumerate(combos):
        base = config.to_dict()
        for rep in range(spec.replications):
            if (combo_index, rep) in done:
                continue
            if not _keep_fraction(spec, combo_index, rep):
                continue
            kwargs = dict(base)
            kwargs["seed"] = derive_seed(spec.master_seed, combo_index, rep)
            tasks.append((combo_index, rep, kwargs))

    written = 0
    failures = 0
    with open(path, "a", newline="") as fh:
        writer = csv.writer(fh)

        def consume(outcome):
            nonlocal written
            _, _, row = outcome
            writer.writerow(row)
            fh.flush()
            written += 1

        if parallelism == 1:
            for task in tasks:
                try:
                    consume(_execute_one(task))
                except Exception:
                    failures += 1
                    log.exception("execution failed (combo=%s, rep=%s)",
                                  task[0], task[1])
        else:
            with ProcessPoolExecutor(max_workers=parallelism) as pool:
                pending = {
                    pool.submit(_execute_one, task): task for task in tasks
                }
                for fut in as_completed(pending):
                    task = pending[fut]
                    try:
                        consume(fut.result())
                    except Exception:
                        failures += 1
                        log.exception("execution failed (combo=%s, rep=%s)",
                                      task[0], task[1])
    return {"records_written": written, "failures": failures, "skipped": len(done)}
