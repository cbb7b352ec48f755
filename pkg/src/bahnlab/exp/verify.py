"""Seeded property checks over random instances.

Each seed draws a profile (commuter or occasional), a price law and a
perturbation level from ``{0, 0.1, ..., 1}``, then checks exactly:

* PFSUM with perturbation-derived predictions stays within the error-dependent
  bound at its measured error, and the structural lemmas hold on its run;
* PFSUM and FSUM with perfect predictions stay within ``2/(1+beta)``;
* SUM stays within ``2 - beta``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from ..algos import AlgorithmSpec, run_online
from ..analysis.bounds import cr_bound_pfsum
from ..analysis.lemmas import check_lemmas
from ..core import BahncardConfig, RequestSequence, format_rational, ratio
from ..offline import opt_dp
from ..predictors import DerivedPredictor, PerfectPredictor, PerturbationParams, perturb_instance
from ..sampling import PRICE_DISTRIBUTIONS, PriceDistribution, make_rng
from .generators import ProfileParams, generate_instance

LEVELS = tuple(ratio(k, 10) for k in range(11))
CHECKS = ("pfsum-bound", "lemmas", "consistency", "sum-bound")


@dataclass(frozen=True)
class Case:
    seed: int
    profile: ProfileParams
    p: object
    sequence: RequestSequence
    perturbed: RequestSequence


@dataclass
class VerifyReport:
    runs: int = 0
    skipped: int = 0
    checked: dict = field(default_factory=lambda: {c: 0 for c in CHECKS})
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def random_case(seed: int, horizon: int = 200, base_seed: int = 0, p=None) -> Case:
    rng = make_rng("verify", base_seed, seed)
    kind = ("commuter", "occasional")[rng.randrange(2)]
    dist = PriceDistribution(PRICE_DISTRIBUTIONS[rng.randrange(3)])
    level = LEVELS[seed % len(LEVELS)] if p is None else p
    params = ProfileParams(kind, horizon, 2, dist, rng.getrandbits(64))
    seq = generate_instance(params)
    pert = perturb_instance(seq, PerturbationParams(level, dist, rng.getrandbits(64)), range(horizon))
    return Case(seed, params, level, seq, pert)


def verify_case(case: Case, config: BahncardConfig, report: VerifyReport, checks=CHECKS) -> None:
    seq = case.sequence
    opt = opt_dp(seq, config).total_cost
    report.runs += 1
    if opt == 0:
        report.skipped += 1
        return
    f = format_rational
    tag = f"seed {case.seed} ({case.profile.profile}, {case.profile.price_dist.kind}, p={f(case.p)})"

    if "pfsum-bound" in checks or "lemmas" in checks:
        trace = run_online(AlgorithmSpec("PFSUM"), seq, DerivedPredictor(case.perturbed), config)
        if "pfsum-bound" in checks:
            report.checked["pfsum-bound"] += 1
            r, bound = ratio(trace.total, opt), cr_bound_pfsum(trace.eta, config)
            if r > bound:
                report.failures.append(f"{tag}: PFSUM ratio {f(r)} > bound {f(bound)} at eta={f(trace.eta)}")
        if "lemmas" in checks:
            report.checked["lemmas"] += 1
            for v in check_lemmas(trace):
                report.failures.append(f"{tag}: {v}")

    if "consistency" in checks:
        limit = ratio(2, 1 + config.beta)
        for kind in ("PFSUM", "FSUM"):
            report.checked["consistency"] += 1
            trace = run_online(AlgorithmSpec(kind), seq, PerfectPredictor(seq), config)
            r = ratio(trace.total, opt)
            if r > limit:
                report.failures.append(f"{tag}: {kind} with perfect predictions ratio {f(r)} > {f(limit)}")

    if "sum-bound" in checks:
        report.checked["sum-bound"] += 1
        r = ratio(run_online(AlgorithmSpec("SUM"), seq, None, config).total, opt)
        if r > 2 - config.beta:
            report.failures.append(f"{tag}: SUM ratio {f(r)} > {f(2 - config.beta)}")


def verify_suite(
    config: BahncardConfig,
    seeds: int,
    horizon: int = 200,
    base_seed: int = 0,
    checks=CHECKS,
    report: Optional[VerifyReport] = None,
) -> VerifyReport:
    report = report or VerifyReport()
    for s in range(seeds):
        verify_case(random_case(s, horizon, base_seed), config, report, checks)
    return report
