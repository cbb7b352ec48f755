"""Per-run ratio against the offline optimum."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..algos import RunTrace
from ..core import Rational, format_rational, ratio
from ..errors import ZeroOpt
from ..offline import OptSolution
from .bounds import Bound, bound_for


@dataclass(frozen=True)
class RatioReport:
    alg_cost: Rational
    opt_cost: Rational
    ratio: Rational
    eta: Rational
    bound: Bound
    within_bound: Optional[bool]

    def to_dict(self) -> dict:
        f = format_rational
        return {
            "alg_cost": f(self.alg_cost),
            "opt_cost": f(self.opt_cost),
            "ratio": f(self.ratio),
            "ratio_float": float(self.ratio),
            "eta": f(self.eta),
            "bound_kind": self.bound.kind,
            "bound": None if self.bound.value is None else f(self.bound.value),
            "within_bound": self.within_bound,
        }


def ratio_report(trace: RunTrace, opt: OptSolution, config=None) -> RatioReport:
    config = config or trace.config
    if opt.total_cost == 0:
        raise ZeroOpt("optimal cost is zero; the ratio is undefined")
    r = ratio(trace.total, opt.total_cost)
    eta = trace.eta
    bound = bound_for(trace.spec, eta, config)
    return RatioReport(trace.total, opt.total_cost, r, eta, bound, bound.admits(r))
