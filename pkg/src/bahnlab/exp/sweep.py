"""Cost-ratio sweeps over perturbation levels.

For each run index ``r`` one instance is generated and its optimum computed
once.  For each perturbation level ``p`` the instance is perturbed and every
algorithm is replayed on the true instance with predictions read off the
perturbed copy.  Seeds depend only on ``(base_seed, r)`` and
``(base_seed, r, p)``, so the output does not depend on how runs are spread
over workers.  Runs whose optimum is zero are skipped and reported.
"""

from __future__ import annotations

import math
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from ..algos import run_online
from ..analysis.bounds import bound_for
from ..core import BahncardConfig, Rational, format_rational, price_scale, ratio, scale_prices
from ..offline import opt_dp
from ..predictors import DerivedPredictor, PerturbationParams, perturb_instance
from ..sampling import derive_seed
from .config import ExperimentConfig
from .generators import generate_instance

CSV_HEADER = ("algorithm", "p", "mean_ratio", "ci95_lo", "ci95_hi", "mean_eta", "runs")
Z95 = 1.96


@dataclass(frozen=True)
class RunRecord:
    run: int
    p: Rational
    algorithm: str
    ratio: Rational
    eta: Rational
    within_bound: Optional[bool]


@dataclass(frozen=True)
class ResultRow:
    algorithm: str
    p: Rational
    mean_ratio: float
    ci95_lo: float
    ci95_hi: float
    mean_eta: float
    runs: int

    def cells(self) -> Tuple[str, ...]:
        fx = lambda v: f"{v:.6f}"  # noqa: E731
        return (
            self.algorithm,
            fx(float(self.p)),
            fx(self.mean_ratio),
            fx(self.ci95_lo),
            fx(self.ci95_hi),
            fx(self.mean_eta),
            str(self.runs),
        )


@dataclass(frozen=True)
class SweepResult:
    rows: Tuple[ResultRow, ...]
    records: Tuple[RunRecord, ...]
    skipped: Tuple[int, ...]


def instance_seed(base_seed: int, run: int) -> int:
    return derive_seed("instance", base_seed, run)


def perturb_seed(base_seed: int, run: int, p) -> int:
    return derive_seed("perturb", base_seed, run, format_rational(p))


def run_one(cfg: ExperimentConfig, run: int) -> Optional[List[RunRecord]]:
    """All records for run ``run``; ``None`` when its optimum is zero."""
    params = replace(cfg.profile, rng_seed=instance_seed(cfg.base_seed, run))
    raw = generate_instance(params)
    grid = range(cfg.profile.horizon_days)
    perturbed = []
    for p in cfg.perturbations:
        pp = PerturbationParams(p, cfg.noise_law, perturb_seed(cfg.base_seed, run, p), cfg.order, cfg.streams)
        perturbed.append(perturb_instance(raw, pp, grid))
    # integer prices: ratios are unchanged, errors are scaled back below
    k = price_scale(raw, *perturbed, config=cfg.config)
    config = BahncardConfig(cfg.config.C * k, cfg.config.beta, cfg.config.T)
    seq = scale_prices(raw, k)
    opt = opt_dp(seq, config).total_cost
    if opt == 0:
        return None
    out = []
    for p, pert in zip(cfg.perturbations, perturbed):
        predictor = DerivedPredictor(scale_prices(pert, k))
        for spec in cfg.algorithms:
            trace = run_online(spec, seq, predictor, config)
            r = ratio(trace.total, opt)
            eta = ratio(trace.eta, k)
            ok = bound_for(spec, eta, cfg.config).admits(r)
            out.append(RunRecord(run, p, spec.label, r, eta, ok))
    return out


def _run_chunk(args):
    cfg, runs = args
    return [(r, run_one(cfg, r)) for r in runs]


def worker_count(requested: Optional[int] = None) -> int:
    if requested is not None:
        return max(1, requested)
    env = os.environ.get("BAHNLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _collect(cfg: ExperimentConfig, workers: int):
    runs = list(range(cfg.runs_per_point))
    if workers <= 1 or len(runs) <= 1:
        return [(r, run_one(cfg, r)) for r in runs]
    chunks = [(cfg, runs[k::workers]) for k in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = [item for part in pool.map(_run_chunk, chunks) for item in part]
    return sorted(results, key=lambda item: item[0])


def aggregate(records) -> List[ResultRow]:
    groups = {}
    for rec in sorted(records, key=lambda rec: (rec.algorithm, rec.p, rec.run)):
        groups.setdefault((rec.algorithm, rec.p), []).append(rec)
    rows = []
    for (alg, p), recs in groups.items():
        ratios = [float(rec.ratio) for rec in recs]
        n = len(ratios)
        mean = math.fsum(ratios) / n
        half = Z95 * statistics.stdev(ratios) / math.sqrt(n) if n > 1 else 0.0
        eta = float(sum((rec.eta for rec in recs), 0) / n)
        rows.append(ResultRow(alg, p, mean, mean - half, mean + half, eta, n))
    return rows


def run_sweep(cfg: ExperimentConfig, workers: Optional[int] = None) -> SweepResult:
    records, skipped = [], []
    for r, recs in _collect(cfg, worker_count(workers)):
        if recs is None:
            skipped.append(r)
        else:
            records.extend(recs)
    return SweepResult(tuple(aggregate(records)), tuple(records), tuple(skipped))


def run_experiment(cfg: ExperimentConfig, workers: Optional[int] = None) -> List[ResultRow]:
    return list(run_sweep(cfg, workers).rows)


def rows_to_csv(rows) -> str:
    lines = [",".join(CSV_HEADER)]
    lines += [",".join(row.cells()) for row in rows]
    return "\n".join(lines) + "\n"


def write_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(rows_to_csv(rows))
