"""Random-forest feature importances over the swept variables.

Fits a depth-limited forest to an outcome and reports one importance per
swept variable. The objective function enters one-hot; its dummies'
importances are summed into a single entry, so the five reported values are
non-negative and sum to one.
"""

from __future__ import annotations

import pandas as pd
from sklearn.ensemble import RandomForestRegressor

from .io import OBJECTIVES
from .regression import DegenerateTargetError, TARGETS

FEATURES = ("objective", "n", "p_t", "epsilon", "p_e")
MIN_RECORDS = 500


def feature_importance(
    records: pd.DataFrame,
    target: str,
    max_depth: int = 4,
    n_trees: int = 100,
    seed: int = 0,
) -> pd.Series:
    if target not in TARGETS:
        raise ValueError(f"target must be one of {TARGETS}, got {target!r}")
    if len(records) < MIN_RECORDS:
        raise ValueError(
            f"need at least {MIN_RECORDS} records, got {len(records)}"
        )
    y = records[target].astype(float)
    if y.nunique() < 2:
        raise DegenerateTargetError(f"target {target!r} is constant")
    columns = {}
    for kind in OBJECTIVES:
        columns[f"objective[{kind}]"] = (records["objective"] == kind).astype(float)
    for name in ("n", "p_t", "epsilon", "p_e"):
        columns[name] = records[name].astype(float)
    design = pd.DataFrame(columns)
    forest = RandomForestRegressor(
        n_estimators=n_trees, max_depth=max_depth, random_state=seed, n_jobs=1
    )
    forest.fit(design.to_numpy(), y.to_numpy())
    raw = pd.Series(forest.feature_importances_, index=design.columns)
    out = pd.Series(
        {
            "objective": raw[[c for c in raw.index if c.startswith("objective[")]].sum(),
            "n": raw["n"],
            "p_t": raw["p_t"],
            "epsilon": raw["epsilon"],
            "p_e": raw["p_e"],
        }
    )
    return out
