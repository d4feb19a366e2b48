"""Command-line interface: ols, importance, and report over sweep CSVs."""

from __future__ import annotations

import argparse
import json
import sys

from .importance import feature_importance
from .io import read_records
from .regression import MAIN_PREDICTORS, RegressionSpec, fit_ols
from .report import make_report


def cmd_ols(args) -> int:
    records = read_records(args.records)
    predictors = tuple(args.predictors.split(",")) if args.predictors else MAIN_PREDICTORS
    spec = RegressionSpec(
        name=args.name,
        target=args.target,
        predictors=predictors,
        subset_objective=args.subset_objective,
        log_target=args.log_target,
        log_n=args.log_n,
        log_epsilon=args.log_epsilon,
    )
    result = fit_ols(records, spec)
    print(result.to_text())
    return 0


def cmd_importance(args) -> int:
    records = read_records(args.records)
    imp = feature_importance(records, args.target, seed=args.seed)
    print(imp.rename("importance").to_string())
    return 0


def cmd_report(args) -> int:
    records = read_records(args.records)
    manifest = make_report(records, args.out_dir, seed=args.seed)
    print(json.dumps(manifest, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codev-analysis",
        description="Statistical post-processing of design-cycle sweep CSVs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ols = sub.add_parser("ols", help="fit one regression model")
    ols.add_argument("--records", required=True)
    ols.add_argument("--target", choices=("F_final", "N"), required=True)
    ols.add_argument("--name", default="model")
    ols.add_argument("--predictors", help="comma-separated subset of "
                                          "objective,n,p_t,epsilon,p_e")
    ols.add_argument("--subset-objective", dest="subset_objective")
    ols.add_argument("--log-target", dest="log_target", action="store_true")
    ols.add_argument("--log-n", dest="log_n", action="store_true")
    ols.add_argument("--log-epsilon", dest="log_epsilon", action="store_true")
    ols.set_defaults(func=cmd_ols)

    imp = sub.add_parser("importance", help="random-forest feature importances")
    imp.add_argument("--records", required=True)
    imp.add_argument("--target", choices=("F_final", "N"), required=True)
    imp.add_argument("--seed", type=int, default=0)
    imp.set_defaults(func=cmd_importance)

    rep = sub.add_parser("report", help="full report with manifest")
    rep.add_argument("--records", required=True)
    rep.add_argument("--out-dir", dest="out_dir", required=True)
    rep.add_argument("--seed", type=int, default=0)
    rep.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
