"""Statistical post-processing for design-cycle sweep results.

Reads the simulator's sweep CSV and produces the standard analysis
artifacts: multivariate OLS with robust standard errors, random-forest
feature importances, and a batch report with a content manifest.
"""

from .importance import feature_importance
from .io import read_records
from .regression import (
    CollinearityError,
    DegenerateTargetError,
    OLSResult,
    RegressionSpec,
    fit_ols,
    significance_stars,
)
from .report import make_report

__version__ = "0.1.0"

__all__ = [
    "CollinearityError",
    "DegenerateTargetError",
    "OLSResult",
    "RegressionSpec",
    "feature_importance",
    "fit_ols",
    "make_report",
    "read_records",
    "significance_stars",
]
