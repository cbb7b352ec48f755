"""Online purchase rules and the replay engine that runs them.

Every rule is consulted only at a request arriving while no card is valid.
The engine then either buys at that instant (the request is served at the
reduced price) or pays the full price.  Requests under a valid card are
always reduced and never trigger a decision.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from .core import (
    BahncardConfig,
    CostLedger,
    Interval,
    Rational,
    RequestSequence,
    discounted,
    format_rational,
    ratio,
    rational,
)
from .predictors import PerfectPredictor, PredictionLog, PredictionQuery, Predictor, measure_eta

KINDS = ("SUM", "SUM_W", "FSUM", "PFSUM", "SRL")
NEEDS_PREDICTOR = ("SUM_W", "FSUM", "PFSUM", "SRL")


@dataclass(frozen=True)
class AlgorithmSpec:
    """Which rule to run, with its hyper-parameter.

    ``w`` is the look-ahead of SUM_W (``None`` means ``T/2`` at run time);
    ``lam`` is the SRL trust parameter; ``grid`` switches SRL to scanning
    extra candidate times every ``grid`` days besides the request times.
    """

    kind: str
    w: Optional[Rational] = None
    lam: Optional[Rational] = None
    grid: Optional[Rational] = None

    def __post_init__(self):
        kind = self.kind.upper().replace("-", "_")
        if kind == "SUMW":
            kind = "SUM_W"
        if kind not in KINDS:
            raise ValueError(f"unknown algorithm {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        for name in ("w", "lam", "grid"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, rational(v))
        if self.w is not None and kind != "SUM_W":
            raise ValueError("w only applies to SUM_W")
        if self.w is not None and self.w <= 0:
            raise ValueError("w must be positive")
        if kind == "SRL":
            if self.lam is None:
                object.__setattr__(self, "lam", ratio(1, 2))
            if not 0 < self.lam <= 1:
                raise ValueError("lambda must lie in (0, 1]")
        elif self.lam is not None:
            raise ValueError("lam only applies to SRL")
        if self.grid is not None and (kind != "SRL" or self.grid <= 0):
            raise ValueError("grid must be positive and only applies to SRL")

    def window(self, config: BahncardConfig) -> Rational:
        """Resolved SUM_W look-ahead, checked against ``T``."""
        w = self.w if self.w is not None else ratio(config.T, 2)
        if not 0 < w < config.T:
            raise ValueError("SUM_W needs 0 < w < T")
        return w

    @property
    def label(self) -> str:
        if self.kind == "SUM_W" and self.w is not None:
            return f"SUM_W[w={format_rational(self.w)}]"
        if self.kind == "SRL":
            extra = f";grid={format_rational(self.grid)}" if self.grid is not None else ""
            return f"SRL[lambda={format_rational(self.lam)}{extra}]"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "AlgorithmSpec":
        """Inverse of :attr:`label` (also accepts bare kinds)."""
        text = text.strip()
        if "[" not in text:
            return cls(text)
        kind, _, rest = text.partition("[")
        kwargs = {}
        for part in rest.rstrip("]").split(";"):
            key, _, value = part.partition("=")
            key = {"lambda": "lam"}.get(key.strip(), key.strip())
            kwargs[key] = value.strip()
        return cls(kind, **kwargs)


@dataclass(frozen=True)
class RunTrace:
    """Everything one online run produced."""

    spec: AlgorithmSpec
    config: BahncardConfig
    sequence: RequestSequence
    schedule: Tuple[Rational, ...]
    reduced: Tuple[bool, ...]
    per_request: Tuple[Rational, ...]
    ledger: CostLedger
    prediction_log: PredictionLog

    @property
    def total(self) -> Rational:
        return self.ledger.total

    @property
    def eta(self) -> Rational:
        return measure_eta(self.prediction_log)

    def classification(self, i: int) -> str:
        return "reduced" if self.reduced[i] else "regular"

    def cost_in(self, window: Interval) -> Rational:
        """Cost incurred inside ``window``: tickets there plus cards bought there."""
        a, b = window.index_range(self.sequence.times)
        total = sum(self.per_request[a:b], 0)
        total += self.config.C * sum(1 for mu in self.schedule if mu in window)
        return rational(total)

    def to_dict(self) -> dict:
        f = format_rational
        return {
            "algorithm": self.spec.label,
            "config": {"C": f(self.config.C), "beta": f(self.config.beta), "T": f(self.config.T)},
            "schedule": [f(m) for m in self.schedule],
            "requests": [
                {"time": f(t), "price": f(p), "class": self.classification(i), "cost": f(self.per_request[i])}
                for i, (t, p) in enumerate(self.sequence)
            ],
            "ledger": {
                "cards_bought": self.ledger.cards_bought,
                "card_cost_total": f(self.ledger.card_cost_total),
                "reduced_ticket_total": f(self.ledger.reduced_ticket_total),
                "regular_ticket_total": f(self.ledger.regular_ticket_total),
                "total": f(self.ledger.total),
            },
            "predictions": [
                {
                    "query_time": f(q.query_time),
                    "window": str(q.window),
                    "predicted": f(q.predicted),
                    "true": f(q.true_value),
                }
                for q in self.prediction_log
            ],
            "eta": f(self.eta),
        }


class RunState:
    """Mutable bookkeeping for one run; handed to the decision rules."""

    def __init__(self, seq: RequestSequence, config: BahncardConfig, predictor: Optional[Predictor]):
        self.seq = seq
        self.times = seq.times
        self.prices = seq.prices
        self.prefix = seq._prefix
        self.config = config
        self.gamma = config.gamma
        self.predictor = predictor
        self.log = PredictionLog()
        # regular-only prefix sums over the requests processed so far
        self.reg_prefix: List[Rational] = [0]
        self._cache: Dict[Tuple, Rational] = {}

    def query(self, now, window: Interval) -> Rational:
        """Ask the predictor about ``window`` and log the answer with the truth."""
        key = (window.lo, window.hi, window.lo_closed, window.hi_closed)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self.predictor is None:
            raise ValueError("this algorithm needs a predictor")
        guess = rational(self.predictor.predict(window))
        if guess < 0:
            raise ValueError("predictor returned a negative cost")
        self.log.append(PredictionQuery(now, window, guess, self.seq.cost(window)))
        self._cache[key] = guess
        return guess

    def total_since(self, i: int, lo, closed: bool = False) -> Rational:
        """True cost of requests from time ``lo`` up to request ``i`` inclusive."""
        a = bisect_left(self.times, lo, 0, i + 1) if closed else bisect_right(self.times, lo, 0, i + 1)
        return self.prefix[i + 1] - self.prefix[a]

    def regular_since(self, i: int, lo, closed: bool = False) -> Rational:
        """Regular cost over ``(lo, t_i]`` (``[lo, t_i]`` if closed), counting request ``i`` as regular."""
        a = bisect_left(self.times, lo, 0, i + 1) if closed else bisect_right(self.times, lo, 0, i + 1)
        return self.reg_prefix[i] - self.reg_prefix[a] + self.prices[i]


# ---------------------------------------------------------------------------
# decision rules; each assumes no valid card at request i


def decide_sum(state: RunState, i: int, config: BahncardConfig) -> bool:
    t = state.times[i]
    return state.regular_since(i, t - config.T) >= state.gamma


def decide_sum_w(state: RunState, i: int, config: BahncardConfig, w) -> bool:
    t = state.times[i]
    recent = state.regular_since(i, t + w - config.T)
    ahead = state.query(t, Interval.open_closed(t, t + w))
    return recent + ahead >= state.gamma


def decide_fsum(state: RunState, i: int, config: BahncardConfig) -> bool:
    t = state.times[i]
    return state.query(t, Interval.closed_open(t, t + config.T)) >= state.gamma


def decide_pfsum(state: RunState, i: int, config: BahncardConfig) -> bool:
    t = state.times[i]
    recent = state.total_since(i, t - config.T)
    # always query, so the error is measured at every regular request
    ahead = state.query(t, Interval.closed_open(t, t + config.T))
    return recent >= state.gamma and ahead >= state.gamma


def decide_srl(state: RunState, i: int, config: BahncardConfig, lam, grid=None) -> bool:
    t = state.times[i]
    g = state.gamma
    lo = t - config.T
    a = bisect_right(state.times, lo, 0, i + 1)
    candidates = set(state.times[a : i + 1])
    if grid is not None:
        k = 0
        while t - k * grid > lo:
            candidates.add(t - k * grid)
            k += 1
    low_bar = lam * g
    high_bar = ratio(g, lam)
    hit = False
    for s in sorted(candidates):
        ahead = state.query(t, Interval.closed_open(s, s + config.T))
        spent = state.regular_since(i, s, closed=True)
        if (ahead >= g and spent > low_bar) or (ahead < g and spent > high_bar):
            hit = True
    return hit


def _rule(spec: AlgorithmSpec, config: BahncardConfig) -> Callable[[RunState, int], bool]:
    if spec.kind == "SUM":
        return lambda s, i: decide_sum(s, i, config)
    if spec.kind == "SUM_W":
        w = spec.window(config)
        return lambda s, i: decide_sum_w(s, i, config, w)
    if spec.kind == "FSUM":
        return lambda s, i: decide_fsum(s, i, config)
    if spec.kind == "PFSUM":
        return lambda s, i: decide_pfsum(s, i, config)
    return lambda s, i: decide_srl(s, i, config, spec.lam, spec.grid)


def run_online(
    spec: AlgorithmSpec,
    seq: RequestSequence,
    predictor: Optional[Predictor],
    config: BahncardConfig,
) -> RunTrace:
    """Replay ``seq`` through the rule in ``spec``.

    ``predictor`` may be ``None`` for SUM; for the other rules ``None`` means
    perfect predictions.
    """
    if predictor is None and spec.kind in NEEDS_PREDICTOR:
        predictor = PerfectPredictor(seq)
    state = RunState(seq, config, predictor)
    decide = _rule(spec, config)
    beta = config.beta
    T = config.T
    expiry = None
    schedule = []
    reduced = []
    per_request = []
    red_total = 0
    reg_total = 0
    reg_acc = 0
    for i, (t, p) in enumerate(zip(seq.times, seq.prices)):
        covered = expiry is not None and t < expiry
        if not covered and decide(state, i):
            schedule.append(t)
            expiry = t + T
            covered = True
        if covered:
            c = discounted(beta, p)
            red_total += c
        else:
            c = p
            reg_total += p
            reg_acc += p
        reduced.append(covered)
        per_request.append(c)
        state.reg_prefix.append(reg_acc)
    ledger = CostLedger(len(schedule), config.C * len(schedule), rational(red_total), rational(reg_total))
    return RunTrace(
        spec, config, seq, tuple(schedule), tuple(reduced), tuple(per_request), ledger, state.log
    )
