"""Reader for the sweep result CSV (the interface to the simulator)."""

from __future__ import annotations

from pathlib import Path

import pandas as pd

CSV_COLUMNS = [
    "combo_index", "replication_index", "objective", "n", "p_t", "epsilon",
    "p_e", "h", "d", "tau", "rho", "omega", "n_inner", "estimation_method",
    "seed", "N", "F_final", "converged", "wall_time_ms",
]

OBJECTIVES = ("absolute-sum", "sphere", "ackley", "levy")
BASELINE_OBJECTIVE = "absolute-sum"

_NUMERIC = {
    "combo_index": int, "replication_index": int, "n": int, "h": int, "d": int,
    "omega": int, "n_inner": int, "N": int,
    "p_t": float, "epsilon": float, "p_e": float, "tau": float, "rho": float,
    "F_final": float, "wall_time_ms": float,
}


class SchemaError(ValueError):
    """The input file does not match the sweep record schema."""


def read_records(path) -> pd.DataFrame:
    path = Path(path)
    df = pd.read_csv(path, dtype=str)
    if list(df.columns) != CSV_COLUMNS:
        raise SchemaError(
            f"{path} header {list(df.columns)!r} does not match the sweep schema"
        )
    for col, kind in _NUMERIC.items():
        df[col] = df[col].astype(kind)
    # seeds are unsigned 64-bit and can exceed int64: keep python ints
    df["seed"] = df["seed"].map(int)
    bad = set(df["objective"]) - set(OBJECTIVES)
    if bad:
        raise SchemaError(f"unknown objective values: {sorted(bad)}")
    df["converged"] = df["converged"].map({"true": True, "false": False})
    if df["converged"].isna().any():
        raise SchemaError("converged column must be 'true' or 'false'")
    return df
