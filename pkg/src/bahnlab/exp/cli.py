"""Command-line entry point: ``bahnlab run|sweep|verify|tight|opt``.

Exit codes: 0 on success, 1 when ``verify`` finds a violation, 2 on a
configuration or input error (the message names the offending field).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from ..algos import AlgorithmSpec, run_online
from ..analysis.patterns import classify_patterns, describe
from ..analysis.report import ratio_report
from ..analysis.tight import TightInstanceSpec, pattern_bound, run_tight, tight_instance
from ..core import BahncardConfig, format_rational, rational
from ..errors import BahnlabError, ConfigError, RegimeMismatch, Unclassifiable, ZeroOpt
from ..io import FormatError, read_sequence, sequence_to_csv
from ..offline import opt_dp
from ..predictors import DerivedPredictor, PerfectPredictor, PerturbationParams, SyntheticPredictor, perturb_instance
from ..sampling import PriceDistribution
from .config import load_config
from .generators import ProfileParams, generate_instance
from .sweep import rows_to_csv, run_sweep, worker_count
from .verify import VerifyReport, verify_suite


def _rat(text: str, field: str):
    try:
        return rational(text)
    except (TypeError, ValueError) as exc:
        raise ConfigError(field, str(exc)) from None


def _bahncard(args) -> BahncardConfig:
    values = {k: _rat(getattr(args, k), k) for k in ("C", "beta", "T")}
    try:
        return BahncardConfig(**values)
    except ValueError as exc:
        key = "C" if str(exc).startswith("card") else "beta" if "beta" in str(exc) else "T"
        raise ConfigError(key, str(exc)) from None


def _add_bahncard(p: argparse.ArgumentParser) -> None:
    p.add_argument("--C", default="100", help="card price (default 100)")
    p.add_argument("--beta", default="0.8", help="discount factor in [0, 1) (default 0.8)")
    p.add_argument("--T", default="10", help="validity period (default 10)")


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _instance(args):
    if args.instance:
        return read_sequence(args.instance)
    try:
        params = ProfileParams(args.profile, args.horizon, _rat(args.gap_mean, "gap-mean"), args.price_dist, args.seed)
    except ValueError as exc:
        raise ConfigError("profile", str(exc)) from None
    return generate_instance(params)


def cmd_run(args) -> int:
    config = _bahncard(args)
    try:
        spec = AlgorithmSpec.parse(args.algorithm)
    except ValueError as exc:
        raise ConfigError("algorithm", str(exc)) from None
    seq = _instance(args)
    if args.predictor == "perfect":
        predictor = PerfectPredictor(seq)
    elif args.predictor == "synthetic":
        predictor = SyntheticPredictor(seq, _rat(args.bias, "bias"))
    else:
        try:
            params = PerturbationParams(_rat(args.p, "p"), PriceDistribution(args.noise), args.perturb_seed)
            perturbed = perturb_instance(seq, params)
        except ValueError as exc:
            raise ConfigError("p", str(exc)) from None
        predictor = DerivedPredictor(perturbed)
    trace = run_online(spec, seq, predictor, config)
    opt = opt_dp(seq, config)
    out = {"trace": trace.to_dict(), "opt": opt.to_dict()}
    try:
        out["report"] = ratio_report(trace, opt, config).to_dict()
    except ZeroOpt as exc:
        out["report"] = {"error": str(exc)}
    if spec.kind == "PFSUM" and args.patterns:
        try:
            out["patterns"] = describe(classify_patterns(trace, opt, config))
        except Unclassifiable as exc:
            out["patterns"] = {"error": str(exc)}
    _emit(out)
    return 0


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    result = run_sweep(cfg, worker_count(args.workers))
    text = rows_to_csv(result.rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if result.skipped:
        runs = ", ".join(str(r) for r in result.skipped)
        print(f"skipped {len(result.skipped)} run(s) with zero optimal cost: {runs}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    config = _bahncard(args)
    if args.seeds < 1:
        raise ConfigError("seeds", "must be positive")
    report: VerifyReport = verify_suite(config, args.seeds, args.horizon, args.seed)
    checked = ", ".join(f"{k}={v}" for k, v in report.checked.items())
    print(f"{report.runs} instances ({report.skipped} with zero optimum); checks: {checked}")
    for line in report.failures[:50]:
        print(f"VIOLATION {line}")
    if report.failures:
        print(f"{len(report.failures)} violation(s)")
        return 1
    print("no violations")
    return 0


def cmd_tight(args) -> int:
    config = _bahncard(args)
    if args.eta is not None and args.eta_frac is not None:
        raise ConfigError("eta", "give --eta or --eta-frac, not both")
    eta = _rat(args.eta, "eta") if args.eta is not None else 0
    if args.eta_frac is not None:
        eta = _rat(args.eta_frac, "eta-frac") * config.gamma
    eps = _rat(args.epsilon, "epsilon") if args.epsilon is not None else None
    x = args.x if args.x is not None else (1 if args.pattern.upper() == "P6" else 0)
    try:
        spec = TightInstanceSpec(args.pattern, config, eta, eps, x)
        inst = tight_instance(spec)
    except RegimeMismatch as exc:
        raise ConfigError("pattern", str(exc)) from None
    run = run_tight(inst)
    f = format_rational
    achieved = run.interval_ratio
    out = {
        "pattern": spec.pattern,
        "eta": f(spec.eta),
        "epsilon": f(spec.epsilon),
        "x": spec.x,
        "instance": sequence_to_csv(inst.sequence).splitlines(),
        "predictions": {f(t): f(v) for t, v in sorted(inst.predictions.items())},
        "algorithm": inst.algorithm.label,
        "schedule": [f(t) for t in run.trace.schedule],
        "opt_schedule": [f(t) for t in run.opt.schedule],
        "matches_design": run.matches_design,
        "measured_eta": f(run.eta),
        "interval": str(inst.interval),
        "achieved_ratio": float(achieved),
        "whole_instance_ratio": float(run.ratio),
        "expected_ratio": float(inst.expected_ratio),
        "expected_ratio_exact": f(inst.expected_ratio),
        "relative_gap": float(abs(achieved - inst.expected_ratio) / inst.expected_ratio),
        "pattern_bound": float(pattern_bound(spec)),
        "patterns": [str(lab) for lab in run.labels],
    }
    _emit(out)
    return 0


def cmd_opt(args) -> int:
    config = _bahncard(args)
    seq = read_sequence(args.instance)
    _emit(opt_dp(seq, config).to_dict())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bahnlab", description="Bahncard simulator and analysis toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one algorithm on one instance and report its ratio")
    _add_bahncard(p)
    p.add_argument("--algorithm", default="PFSUM", help="SUM, SUM_W[w=..], FSUM, PFSUM or SRL[lambda=..]")
    p.add_argument("--instance", help="CSV or JSON request file (otherwise generate one)")
    p.add_argument("--profile", default="commuter", choices=("commuter", "occasional"))
    p.add_argument("--horizon", type=int, default=200)
    p.add_argument("--gap-mean", default="2")
    p.add_argument("--price-dist", default="uniform", choices=("uniform", "normal", "pareto"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--predictor", default="perfect", choices=("perfect", "derived", "synthetic"))
    p.add_argument("--p", default="0", help="perturbation probability for --predictor derived")
    p.add_argument("--noise", default="uniform", choices=("uniform", "normal", "pareto"))
    p.add_argument("--perturb-seed", type=int, default=0)
    p.add_argument("--bias", default="0", help="additive error for --predictor synthetic")
    p.add_argument("--patterns", action="store_true", help="also label PFSUM/OPT patterns")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="run an experiment config and write the aggregate CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--seed", type=int, help="override base_seed")
    p.add_argument("--workers", type=int, help="worker processes (default: BAHNLAB_THREADS or CPU count)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check bounds and lemmas over random seeds")
    _add_bahncard(p)
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--horizon", type=int, default=200)
    p.add_argument("--seed", type=int, default=0, help="base seed")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tight", help="build and run a near-tight instance")
    _add_bahncard(p)
    p.add_argument("--pattern", required=True, help="SUMW_LB, P_III, P_IV, P_V or P6")
    p.add_argument("--eta", help="prediction error (absolute)")
    p.add_argument("--eta-frac", help="prediction error as a multiple of gamma")
    p.add_argument("--epsilon", help="construction slack (default gamma/10^4)")
    p.add_argument("--x", type=int, help="number of inner cards (P_III, P6)")
    p.set_defaults(func=cmd_tight)

    p = sub.add_parser("opt", help="optimal offline cost and schedule of an instance file")
    _add_bahncard(p)
    p.add_argument("--instance", required=True)
    p.set_defaults(func=cmd_opt)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BahnlabError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
