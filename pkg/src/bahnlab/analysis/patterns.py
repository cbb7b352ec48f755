"""Split a PFSUM run and an optimal schedule into the six interval patterns.

Cards of both schedules are grouped into connected components of the
overlap relation (cards that merely touch end-to-start are separate).  Each
component is then labelled:

* ``I``   one PFSUM card and one optimal card bought at the same instant;
* ``II``  a single optimal card inside a PFSUM off phase;
* ``III`` starts with an optimal card in an off phase, ends in an off phase;
* ``IV``  starts in an off phase, ends with a PFSUM on phase;
* ``V``   starts with a PFSUM purchase, ends in an off phase;
* ``VI``  starts and ends with PFSUM on phases.

``x`` counts optimal cards bought in one PFSUM on phase that expire in the
next one.  A ``VI`` is augmented when its last on phase costs at least
gamma.  Every non-augmented ``VI`` is linked back through preceding ``V``/``VI``
components to the nearest ``I``-``IV`` component; that chain is reported as
an annotation alongside the per-interval figures.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from ..algos import RunTrace
from ..core import BahncardConfig, Interval, Rational, format_rational, ratio
from ..errors import Unclassifiable
from ..offline import OptSolution

KINDS = ("I", "II", "III", "IV", "V", "VI")


@dataclass(frozen=True)
class PatternLabel:
    kind: str
    interval: Interval
    x: int
    augmented: bool
    pfsum_cost: Rational
    opt_cost: Rational
    pfsum_cards: Tuple[Rational, ...]
    opt_cards: Tuple[Rational, ...]
    chain: Optional[Tuple[int, ...]] = None

    @property
    def ratio(self) -> Optional[Rational]:
        return ratio(self.pfsum_cost, self.opt_cost) if self.opt_cost else None

    def __str__(self) -> str:
        aug = " augmented" if self.augmented else ""
        return f"{self.kind}{aug} x={self.x} on {self.interval}"


@dataclass(frozen=True)
class ChainAnnotation:
    """A non-augmented VI together with the components it backtracks through."""

    members: Tuple[int, ...]
    complete: bool
    pfsum_cost: Rational
    opt_cost: Rational

    @property
    def ratio(self) -> Optional[Rational]:
        return ratio(self.pfsum_cost, self.opt_cost) if self.opt_cost else None

    @property
    def kinds(self) -> str:
        return "+".join(str(m) for m in self.members)


def _components(pfsum: Tuple, opt: Tuple, T) -> List[Tuple[list, list]]:
    cards = sorted([(mu, 0) for mu in pfsum] + [(tau, 1) for tau in opt])
    comps = []
    end = None
    for start, who in cards:
        if end is None or start >= end:
            comps.append(([], []))
            end = start + T
        else:
            end = max(end, start + T)
        comps[-1][who].append(start)
    return comps


def _classify(P: list, O: list, seq, config: BahncardConfig):
    T = config.T
    lo = min(P + O)
    hi = max(P + O) + T
    where = Interval.closed_open(lo, hi)
    if P and O and set(P) & set(O):
        if len(P) == 1 and len(O) == 1:
            return "I", where, 0, False
        raise Unclassifiable(f"simultaneous purchases inside a longer component {where}: PFSUM {P}, OPT {O}")
    if not P:
        if len(O) == 1:
            return "II", where, 0, False
        raise Unclassifiable(f"overlapping optimal cards with no PFSUM card on {where}: {O}")
    if not O:
        if len(P) == 1:
            return "VI", where, 0, seq.cost(Interval.closed_open(P[0], P[0] + T)) >= config.gamma
        raise Unclassifiable(f"overlapping PFSUM cards on {where}: {P}")
    starts_on = P[0] < O[0]
    ends_on = P[-1] > O[-1]
    x = 0
    for tau in O:
        for a in range(len(P) - 1):
            if P[a] < tau < P[a] + T and P[a + 1] < tau + T < P[a + 1] + T:
                x += 1
                break
    kind = {(False, False): "III", (False, True): "IV", (True, False): "V", (True, True): "VI"}[
        (starts_on, ends_on)
    ]
    expected_opt = {"III": x + 2, "IV": x + 1, "V": x + 1, "VI": x}[kind]
    if len(P) != x + 1 or len(O) != expected_opt:
        raise Unclassifiable(
            f"component {where} looks like {kind} with x={x} but has "
            f"{len(P)} PFSUM and {len(O)} optimal cards"
        )
    augmented = kind == "VI" and seq.cost(Interval.closed_open(P[-1], P[-1] + T)) >= config.gamma
    return kind, where, x, augmented


def classify_patterns(trace: RunTrace, opt: OptSolution, config: BahncardConfig = None) -> List[PatternLabel]:
    """Label every component; non-augmented VI labels carry their chain."""
    config = config or trace.config
    seq = trace.sequence
    labels: List[PatternLabel] = []
    for P, O in _components(trace.schedule, opt.schedule, config.T):
        kind, where, x, augmented = _classify(P, O, seq, config)
        labels.append(
            PatternLabel(
                kind,
                where,
                x,
                augmented,
                trace.cost_in(where),
                opt.cost_in(seq, where),
                tuple(P),
                tuple(O),
            )
        )
    out = []
    for k, lab in enumerate(labels):
        if lab.kind == "VI" and not lab.augmented:
            m = k - 1
            while m >= 0 and labels[m].kind in ("V", "VI"):
                m -= 1
            lab = replace(lab, chain=tuple(range(max(m, 0), k + 1)))
        out.append(lab)
    return out


def chain_annotations(labels: List[PatternLabel]) -> List[ChainAnnotation]:
    """Aggregate cost of each backtracking chain (one per non-augmented VI)."""
    out = []
    for lab in labels:
        if lab.chain is None:
            continue
        members = lab.chain
        complete = labels[members[0]].kind in ("I", "II", "III", "IV")
        pf = sum((labels[m].pfsum_cost for m in members), 0)
        op = sum((labels[m].opt_cost for m in members), 0)
        out.append(ChainAnnotation(members, complete, pf, op))
    return out


def describe(labels: List[PatternLabel]) -> List[dict]:
    f = format_rational
    rows = []
    for lab in labels:
        rows.append(
            {
                "kind": lab.kind,
                "interval": str(lab.interval),
                "x": lab.x,
                "augmented": lab.augmented,
                "pfsum_cost": f(lab.pfsum_cost),
                "opt_cost": f(lab.opt_cost),
                "ratio": None if lab.ratio is None else f(lab.ratio),
                "chain": None if lab.chain is None else list(lab.chain),
            }
        )
    return rows
