"""Batch report: regression tables, importance charts, manifest."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

from .importance import feature_importance
from .regression import MAIN_PREDICTORS, RegressionSpec, fit_ols

DEFAULT_MODELS = (
    RegressionSpec(name="performance_main", target="F_final",
                   predictors=MAIN_PREDICTORS),
    RegressionSpec(name="cycles_main", target="N", predictors=MAIN_PREDICTORS),
)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _descriptive_stats(records: pd.DataFrame) -> pd.DataFrame:
    grouped = records.groupby("objective")
    return pd.DataFrame(
        {
            "records": grouped.size(),
            "mean_N": grouped["N"].mean(),
            "median_N": grouped["N"].median(),
            "mean_F_final": grouped["F_final"].mean(),
            "median_F_final": grouped["F_final"].median(),
            "converged_share": grouped["converged"].mean(),
        }
    )


def _importance_chart(importances: pd.Series, target: str, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(importances.index, importances.to_numpy(), color="#3b6ea5")
    ax.set_ylabel("importance")
    ax.set_title(f"feature importances for {target}")
    ax.set_ylim(0, 1)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def make_report(records: pd.DataFrame, out_dir, models=DEFAULT_MODELS,
                seed: int = 0) -> dict:
    """Write tables, charts, and a manifest; returns the manifest dict."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    stats_path = out / "descriptive_stats.csv"
    _descriptive_stats(records).to_csv(stats_path)
    written.append(stats_path)

    for spec in models:
        result = fit_ols(records, spec)
        csv_path = out / f"model_{spec.name}.csv"
        result.table.to_csv(csv_path, index_label="term")
        written.append(csv_path)
        txt_path = out / f"model_{spec.name}.txt"
        txt_path.write_text(result.to_text() + "\n")
        written.append(txt_path)

    for target in ("F_final", "N"):
        imp = feature_importance(records, target, seed=seed)
        csv_path = out / f"importances_{target}.csv"
        imp.rename("importance").to_csv(csv_path, index_label="feature")
        written.append(csv_path)
        png_path = out / f"importances_{target}.png"
        _importance_chart(imp, target, png_path)
        written.append(png_path)

    manifest = {p.name: _sha256(p) for p in written}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
    return manifest
