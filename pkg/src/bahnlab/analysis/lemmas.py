"""Empirical checks of the structural lemmas on a PFSUM run.

With ``eta`` the largest prediction error PFSUM actually saw:

* on-phase floor: every on phase carries total cost at least ``gamma - eta``;
* off-phase ceiling: any window of length at most ``T`` inside an off phase
  carries less than ``2 gamma + eta``;
* straddle ceiling (only for ``eta <= gamma``): a window ``[t, t+T)`` meeting
  an off phase, whose parts in the neighbouring on phases are each at most
  ``gamma``, carries at most ``2 gamma + eta`` in total.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Dict, List

from ..algos import RunTrace
from ..core import Interval, Rational, epoch_decomposition, format_rational, window_ranges

ON_PHASE_FLOOR = "on-phase-floor"
OFF_PHASE_CEILING = "off-phase-ceiling"
STRADDLE_CEILING = "straddle-ceiling"


@dataclass(frozen=True)
class Violation:
    lemma: str
    window: Interval
    sums: Dict[str, Rational] = field(default_factory=dict)

    def __str__(self) -> str:
        parts = ", ".join(f"{k}={format_rational(v)}" for k, v in self.sums.items())
        return f"{self.lemma} violated on {self.window}: {parts}"


def horizon_for(trace: RunTrace) -> Rational:
    last = max([0, *trace.sequence.times[-1:], *trace.schedule[-1:]])
    return last + trace.config.T


def check_lemmas(trace: RunTrace, seq=None, config=None) -> List[Violation]:
    """All lemma violations found in a PFSUM trace (empty when they hold)."""
    seq = seq or trace.sequence
    config = config or trace.config
    g, T = config.gamma, config.T
    eta = trace.eta
    times = seq.times
    epochs = epoch_decomposition(trace.schedule, config, horizon_for(trace)).epochs
    out: List[Violation] = []

    for e in epochs:
        if e.on_phase is not None:
            s = seq.cost(e.on_phase)
            if s < g - eta:
                out.append(Violation(ON_PHASE_FLOOR, e.on_phase, {"cost": s, "gamma-eta": g - eta}))

    for e in epochs:
        off = e.off_phase
        if off.empty:
            continue
        a, b = off.index_range(times)
        for i in range(a, b):
            w = Interval.closed_open(times[i], min(times[i] + T, off.hi))
            s = seq.cost(w)
            if s >= 2 * g + eta:
                out.append(Violation(OFF_PHASE_CEILING, w, {"cost": s, "2gamma+eta": 2 * g + eta}))

    if eta <= g:
        for k, e in enumerate(epochs):
            off = e.off_phase
            if off.empty:
                continue
            nxt = epochs[k + 1] if k + 1 < len(epochs) else None
            prev_on = e.on_phase
            next_on = nxt.on_phase if nxt is not None else None
            # windows [t, t+T) overlapping the off phase have e.start < t < off.hi
            t_lo = e.start if prev_on is not None else off.lo - T
            cut_a = bisect_left(times, off.lo)
            cut_b = bisect_left(times, off.hi)
            for i, j in window_ranges(times, T, t_lo=t_lo, t_hi=off.hi):
                s2 = seq.range_cost(i, min(j + 1, cut_a))
                s3 = seq.range_cost(max(i, cut_a), min(j + 1, cut_b))
                s4 = seq.range_cost(max(i, cut_b), j + 1)
                if prev_on is None:
                    s2 = 0
                if next_on is None:
                    s4 = 0
                if s2 <= g and s4 <= g and s2 + s3 + s4 > 2 * g + eta:
                    w = Interval.closed(times[i], times[j])
                    out.append(Violation(STRADDLE_CEILING, w, {"s2": s2, "s3": s3, "s4": s4}))
    return out
