"""Multivariate OLS with heteroskedasticity-robust standard errors.

Models regress an outcome (final system performance or cycle count) on the
swept variables, with the objective function entering as dummy variables
against the absolute-sum baseline, optional pairwise interactions, and
optional log transforms of the outcome, node count, and threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import pandas as pd
import statsmodels.api as sm

from .io import BASELINE_OBJECTIVE, OBJECTIVES

TARGETS = ("F_final", "N")
MAIN_PREDICTORS = ("objective", "n", "p_t", "epsilon", "p_e")

# significance stars, smallest threshold first
STAR_LEVELS = ((0.001, "***"), (0.005, "**"), (0.01, "*"), (0.05, "+"))


class CollinearityError(ValueError):
    """The design matrix is rank deficient; names the involved columns."""


class DegenerateTargetError(ValueError):
    """The target column is constant."""


def significance_stars(p_value: float) -> str:
    for threshold, stars in STAR_LEVELS:
        if p_value < threshold:
            return stars
    return ""


@dataclass(frozen=True)
class RegressionSpec:
    """One model: target, predictors, interactions, transforms, subset."""

    name: str
    target: str
    predictors: tuple[str, ...] = MAIN_PREDICTORS
    interactions: tuple[tuple[str, str], ...] = ()
    log_target: bool = False
    log_n: bool = False
    log_epsilon: bool = False
    subset_objective: str | None = None

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}, got {self.target!r}")
        for p in self.predictors:
            if p not in MAIN_PREDICTORS:
                raise ValueError(f"unknown predictor {p!r}")
        for a, b in self.interactions:
            if a not in self.predictors or b not in self.predictors:
                raise ValueError(f"interaction ({a}, {b}) uses absent predictors")
        if self.subset_objective is not None:
            if self.subset_objective not in OBJECTIVES:
                raise ValueError(f"unknown objective {self.subset_objective!r}")
            if "objective" in self.predictors:
                raise ValueError("objective dummies are redundant within a subset")


@dataclass
class OLSResult:
    name: str
    table: pd.DataFrame          # estimate, robust_se, p_value, stars per term
    r_squared: float
    r_squared_adj: float
    nobs: int
    residuals: np.ndarray = field(repr=False)
    design: pd.DataFrame = field(repr=False)

    def to_text(self) -> str:
        lines = [
            f"model {self.name}",
            f"observations: {self.nobs}   R-squared: {self.r_squared:.4f} "
            f"(adj. {self.r_squared_adj:.4f})",
            "",
            f"{'term':<32}{'estimate':>14}{'robust SE':>14}{'p':>10}  sig",
        ]
        for term, row in self.table.iterrows():
            lines.append(
                f"{term:<32}{row.estimate:>14.4f}{row.robust_se:>14.4f}"
                f"{row.p_value:>10.2g}  {row.stars}"
            )
        lines.append("")
        lines.append("significance: + p<0.05, * p<0.01, ** p<0.005, *** p<0.001")
        lines.append("robust (HC) standard errors")
        return "\n".join(lines)


def _term_columns(df: pd.DataFrame, predictor: str, spec: RegressionSpec) -> pd.DataFrame:
    if predictor == "objective":
        out = {}
        for kind in OBJECTIVES:
            if kind == BASELINE_OBJECTIVE:
                continue
            out[f"objective[{kind}]"] = (df["objective"] == kind).astype(float)
        return pd.DataFrame(out, index=df.index)
    series = df[predictor].astype(float)
    name = predictor
    if predictor == "n" and spec.log_n:
        series = np.log(series)
        name = "log(n)"
    elif predictor == "epsilon" and spec.log_epsilon:
        series = np.log(series)
        name = "log(epsilon)"
    return pd.DataFrame({name: series})


def build_design(df: pd.DataFrame, spec: RegressionSpec) -> tuple[pd.Series, pd.DataFrame]:
    """Target vector and design matrix (with intercept) for one model."""
    if spec.subset_objective is not None:
        df = df[df["objective"] == spec.subset_objective]
    if len(df) == 0:
        raise ValueError("no records left after subsetting")
    y = df[spec.target].astype(float)
    if spec.log_target:
        if (y <= 0).any():
            raise ValueError("log target requires strictly positive values")
        y = np.log(y)
        y.name = f"log({spec.target})"
    blocks = [pd.DataFrame({"const": np.ones(len(df))}, index=df.index)]
    parts: dict[str, pd.DataFrame] = {}
    for predictor in spec.predictors:
        parts[predictor] = _term_columns(df, predictor, spec)
        blocks.append(parts[predictor])
    for a, b in spec.interactions:
        left, right = parts[a], parts[b]
        cols = {}
        for la, ca in left.items():
            for lb, cb in right.items():
                cols[f"{la} x {lb}"] = ca * cb
        blocks.append(pd.DataFrame(cols, index=df.index))
    design = pd.concat(blocks, axis=1)
    return y, design


def _rank_check(design: pd.DataFrame) -> None:
    matrix = design.to_numpy(dtype=float)
    rank = np.linalg.matrix_rank(matrix)
    if rank < matrix.shape[1]:
        # name a minimal set of offending columns
        involved = []
        kept: list[int] = []
        for j in range(matrix.shape[1]):
            trial = kept + [j]
            if np.linalg.matrix_rank(matrix[:, trial]) < len(trial):
                involved.append(design.columns[j])
            else:
                kept.append(j)
        raise CollinearityError(
            f"design matrix is rank deficient; collinear columns: {involved}"
        )


def fit_ols(records: pd.DataFrame, spec: RegressionSpec,
            cov_type: str = "HC1") -> OLSResult:
    """Fit one model; raises CollinearityError on a rank-deficient design."""
    for level in ("objective", "n", "p_t", "epsilon", "p_e"):
        if level in spec.predictors and records[level].nunique() < 2:
            if not (level == "objective" and spec.subset_objective):
                raise ValueError(f"predictor {level!r} has fewer than 2 levels")
    y, design = build_design(records, spec)
    _rank_check(design)
    fit = sm.OLS(y.to_numpy(), design.to_numpy()).fit(cov_type=cov_type)
    table = pd.DataFrame(
        {
            "estimate": fit.params,
            "robust_se": fit.bse,
            "p_value": fit.pvalues,
        },
        index=design.columns,
    )
    table["stars"] = [significance_stars(p) for p in table["p_value"]]
    return OLSResult(
        name=spec.name,
        table=table,
        r_squared=float(fit.rsquared),
        r_squared_adj=float(fit.rsquared_adj),
        nobs=int(fit.nobs),
        residuals=np.asarray(fit.resid),
        design=design,
    )
