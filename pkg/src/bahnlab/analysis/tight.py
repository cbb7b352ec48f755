"""Concrete instances on which the ratio bounds are (nearly) attained.

Each constructor lays out single requests whose prices realise a prescribed
cost for every sub-interval of a pattern, together with the prediction each
PFSUM query should receive so that PFSUM purchases exactly where the
pattern requires.  Costs that only approach a limit ``v`` are realised as
``v - epsilon`` (split across two requests where the online rule forces it).

Patterns V and VI never occur on their own: PFSUM buys only after seeing
gamma worth of tickets in the preceding ``T`` days.  Their instances
therefore open with a single optimal card inside PFSUM's first off phase
(pattern II) that supplies that history, and the target ratio is measured on
the pattern's own interval.

Times are laid out on a grid of ``T/10``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from ..algos import AlgorithmSpec, RunTrace, run_online
from ..core import BahncardConfig, Interval, Rational, RequestSequence, ratio, rational
from ..errors import RegimeMismatch
from ..offline import OptSolution, opt_dp
from ..predictors import ScheduledPredictor
from .bounds import cr_bound_pfsum
from .patterns import PatternLabel, classify_patterns

PATTERNS = ("SUMW_LB", "P_III", "P_IV", "P_V", "P6")
LOW, HIGH = "eta<=gamma", "eta>gamma"


@dataclass(frozen=True)
class TightInstanceSpec:
    pattern: str
    config: BahncardConfig
    eta: Rational = 0
    epsilon: Optional[Rational] = None
    x: int = 0
    branch: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "pattern", self.pattern.upper())
        object.__setattr__(self, "eta", rational(self.eta))
        if self.epsilon is None:
            object.__setattr__(self, "epsilon", ratio(self.config.gamma, 10**4))
        object.__setattr__(self, "epsilon", rational(self.epsilon))
        if self.pattern not in PATTERNS:
            raise RegimeMismatch(f"unknown pattern {self.pattern!r}; choose from {', '.join(PATTERNS)}")
        if self.eta < 0:
            raise RegimeMismatch("eta must be non-negative")
        if not 0 < self.epsilon < self.config.gamma / 8:
            raise RegimeMismatch("epsilon must lie in (0, gamma/8)")
        if self.x < 0:
            raise RegimeMismatch("x must be non-negative")
        actual = LOW if self.eta <= self.config.gamma else HIGH
        if self.branch is not None and self.branch != actual:
            raise RegimeMismatch(f"branch {self.branch!r} requested but eta={self.eta} puts us in {actual!r}")

    @property
    def regime(self) -> str:
        return LOW if self.eta <= self.config.gamma else HIGH


@dataclass(frozen=True)
class TightInstance:
    spec: TightInstanceSpec
    sequence: RequestSequence
    predictions: Dict[Rational, Rational]
    algorithm: AlgorithmSpec
    expected_ratio: Rational
    interval: Interval
    alg_schedule: Tuple[Rational, ...]
    opt_schedule: Tuple[Rational, ...]
    sums: Dict[str, Rational] = field(default_factory=dict)

    def __iter__(self):
        return iter((self.sequence, self.predictions, self.expected_ratio))

    @property
    def tolerance(self) -> Rational:
        """Allowed shortfall of the measured ratio below the limit at this epsilon."""
        return ratio(20 * self.spec.epsilon, self.spec.config.gamma) * self.expected_ratio


@dataclass(frozen=True)
class TightRun:
    instance: TightInstance
    trace: RunTrace
    opt: OptSolution
    ratio: Rational
    interval_ratio: Rational
    eta: Rational
    labels: Tuple[PatternLabel, ...]

    @property
    def matches_design(self) -> bool:
        return (
            self.trace.schedule == self.instance.alg_schedule
            and self.opt.schedule == self.instance.opt_schedule
        )


# ---------------------------------------------------------------------------
# cost bookkeeping from interval sums (limits, epsilon -> 0)


def _limit_iv(s, C, b):
    return ratio(s["s-1"] + C + b * (s["s0"] + s["s1"]), C + b * (s["s-1"] + s["s0"]) + s["s1"])


def _limit_v(s, C, b):
    return ratio(C + b * (s["s1"] + s["s2"]) + s["s3"], C + s["s1"] + b * (s["s2"] + s["s3"]))


def _limit_vi_x1(s, C, b):
    pf = 2 * C + b * (s["s1"] + s["s2"] + s["s4"] + s["s5"]) + s["s3"]
    op = C + b * (s["s2"] + s["s3"] + s["s4"]) + s["s1"] + s["s5"]
    return ratio(pf, op)


def _limit_iii(s, x, C, b):
    on = lambda k: s[f"s{4 * k}"] + s[f"s{4 * k + 1}"] + s[f"s{4 * k + 2}"]  # noqa: E731
    off = lambda k: s[f"s{4 * k + 3}"]  # noqa: E731
    pf = (x + 1) * C + b * sum(on(k) for k in range(x + 1)) + sum(off(k) for k in range(-1, x + 1))
    mid = sum(s[f"s{4 * k + 2}"] + s[f"s{4 * k + 3}"] + s[f"s{4 * k + 4}"] for k in range(x))
    covered = s["s-1"] + s["s0"] + mid + s[f"s{4 * x + 2}"] + s[f"s{4 * x + 3}"]
    op = (x + 2) * C + b * covered + sum(s[f"s{4 * k + 1}"] for k in range(x + 1))
    return ratio(pf, op)


# ---------------------------------------------------------------------------
# building blocks


class _Builder:
    def __init__(self, spec: TightInstanceSpec):
        self.spec = spec
        self.T = spec.config.T
        self.g = spec.config.gamma
        self.eta = spec.eta
        self.eps = spec.epsilon
        self.reqs = []
        self.pred = {}

    def at(self, k) -> Rational:
        return rational(self.T * ratio(k, 10))

    def add(self, k, price, predicted=None):
        t = self.at(k)
        self.reqs.append((t, rational(price)))
        if predicted is not None:
            self.pred[t] = rational(predicted)
        return t

    def off_block(self, k1, k2, level, tail):
        """Off-phase tickets summing to ``level - eps`` that PFSUM must not buy on.

        The first ticket keeps the recent cost below gamma; the second keeps
        the predicted future below gamma while its true future (itself plus
        ``tail`` still to come within ``T``) exceeds the prediction by eta.
        ``level - gamma`` too small to split leaves a single ticket.
        """
        g, eta, eps = self.g, self.eta, self.eps
        first = g - eps / 2
        second = level - g - eps / 2
        if second <= 0:
            self.add(k1, level - eps)
            return
        self.add(k1, first)
        self.add(k2, second, max(0, second + tail - eta))

    def history(self):
        """A lone optimal card in the first off phase, ending before 1.2T.

        Leaves exactly gamma in ``(0.2T, 1.2T]`` so PFSUM may buy at 1.2T.
        """
        g, eps = self.g, self.eps
        self.add(0, g - eps)
        self.add(4, eps / 2)
        self.add(6, g - eps / 2)

    def sequence(self):
        return RequestSequence(sorted(self.reqs))


def _sumw_lb(spec: TightInstanceSpec):
    if spec.eta != 0:
        raise RegimeMismatch("the SUM_W lower-bound instance uses exact predictions (eta = 0)")
    B = _Builder(spec)
    g, eps = B.g, B.eps
    t1 = B.add(0, eps)
    t2 = B.add(4, g - eps)
    B.add(11, g - 2 * eps)
    t4 = B.add(12, eps)
    t5 = B.add(17, eps)
    b = spec.config.beta
    expected = ratio(3 - b, 1 + b)
    alg = AlgorithmSpec("SUM_W", w=ratio(spec.config.T, 2))
    return B, alg, expected, Interval.closed_open(t1, t5 + spec.config.T), (t1, t4), (t2,), {}


def _p_iv(spec: TightInstanceSpec):
    if spec.x != 0:
        raise RegimeMismatch("the off-on instance is built for x = 0")
    B = _Builder(spec)
    g, eta = B.g, B.eta
    if spec.regime == LOW:
        s = {"s-1": g + 2 * eta, "s0": g - eta, "s1": 0}
    else:
        s = {"s-1": 2 * g + eta, "s0": 0, "s1": 0}
    tau = B.at(5)
    B.off_block(5, 7, s["s-1"], s["s0"])
    mu = B.add(10, s["s0"], g)
    C, b = spec.config.C, spec.config.beta
    where = Interval.closed_open(tau, mu + B.T)
    return B, AlgorithmSpec("PFSUM"), _limit_iv(s, C, b), where, (mu,), (tau,), s


def _p_v(spec: TightInstanceSpec):
    if spec.x != 0:
        raise RegimeMismatch("the on-off instance is built for x = 0")
    B = _Builder(spec)
    g, eta = B.g, B.eta
    if spec.regime == LOW:
        s = {"s1": 0, "s2": g - eta, "s3": g + 2 * eta}
    else:
        s = {"s1": 0, "s2": 0, "s3": 2 * g + eta}
    B.history()
    mu = B.add(12, s["s1"], g)
    tau = B.add(17, s["s2"])
    _off_after(B, 23, 25, s["s2"], s["s3"])
    C, b = spec.config.C, spec.config.beta
    where = Interval.closed_open(mu, tau + B.T)
    return B, AlgorithmSpec("PFSUM"), _limit_v(s, C, b), where, (mu,), (B.at(0), tau), s


def _off_after(B: _Builder, k1, k2, carried, level):
    """Off-phase tickets worth ``level - eps`` with ``carried`` already recent.

    Nothing follows them within ``T``.
    """
    g, eta, eps = B.g, B.eta, B.eps
    first = g - carried - eps / 2
    second = level - first - eps
    if second <= 0 or eta < eps:
        price = level - eps
        B.add(k1, price, max(0, price - eta))
        return
    B.add(k1, first)
    B.add(k2, second, max(0, second - eta))


def _p6(spec: TightInstanceSpec):
    if spec.x != 1:
        raise RegimeMismatch("the on-on instance is built for x = 1")
    B = _Builder(spec)
    g, eta, eps = B.g, B.eta, B.eps
    if spec.regime == LOW:
        s = {"s1": 0, "s2": g - eta, "s3": 2 * eta, "s4": g, "s5": 0}
    else:
        s = {"s1": 0, "s2": 0, "s3": g + eta, "s4": g, "s5": 0}
    B.history()
    mu1 = B.add(12, s["s1"], g)
    tau = B.add(17, s["s2"])
    if s["s3"] > 0:
        e = min(eps, eta)
        first = g - s["s2"] - e / 2
        second = s["s3"] - first - e
        B.add(23, first)
        # true future of this ticket is itself plus s4
        B.add(24, second, second + s["s4"] - eta)
    mu2 = B.add(25, s["s4"])
    C, b = spec.config.C, spec.config.beta
    where = Interval.closed_open(mu1, mu2 + B.T)
    return B, AlgorithmSpec("PFSUM"), _limit_vi_x1(s, C, b), where, (mu1, mu2), (B.at(0), tau), s


def _p_iii(spec: TightInstanceSpec):
    B = _Builder(spec)
    g, eta = B.g, B.eta
    x = spec.x
    low = spec.regime == LOW
    s = {}
    for k in range(-1, x + 1):
        s[f"s{4 * k + 3}"] = (g + 2 * eta if low else 2 * g + eta) if k < x else 2 * g + eta
    for k in range(0, x + 1):
        s[f"s{4 * k}"] = g - eta if low else 0
        s[f"s{4 * k + 1}"] = 0
        s[f"s{4 * k + 2}"] = 0
    tau0 = B.at(6)
    B.off_block(6, 7, s["s-1"], s["s0"])
    mus, taus = [], [tau0]
    for k in range(x + 1):
        base = 10 + 15 * k
        mus.append(B.add(base, s[f"s{4 * k}"], g))
        taus.append(B.add(base + 8, 0))
        if k < x:
            B.off_block(base + 11, base + 12, s[f"s{4 * k + 3}"], s[f"s{4 * k + 4}"])
        else:
            B.off_block(base + 11, base + 12, s[f"s{4 * k + 3}"], 0)
    C, b = spec.config.C, spec.config.beta
    where = Interval.closed_open(tau0, taus[-1] + B.T)
    return B, AlgorithmSpec("PFSUM"), _limit_iii(s, x, C, b), where, tuple(mus), tuple(taus), s


_BUILDERS = {"SUMW_LB": _sumw_lb, "P_IV": _p_iv, "P_V": _p_v, "P6": _p6, "P_III": _p_iii}


def tight_instance(spec: TightInstanceSpec) -> TightInstance:
    """Build the instance for ``spec.pattern``; unpacks as ``(seq, predictions, expected_ratio)``."""
    if spec.pattern == "P6" and spec.x == 0:
        spec = TightInstanceSpec(spec.pattern, spec.config, spec.eta, spec.epsilon, 1, spec.branch)
    builder, alg, expected, where, alg_sched, opt_sched, sums = _BUILDERS[spec.pattern](spec)
    return TightInstance(
        spec,
        builder.sequence(),
        dict(builder.pred),
        alg,
        expected,
        where,
        tuple(alg_sched),
        tuple(opt_sched),
        dict(sums),
    )


def pattern_bound(spec: TightInstanceSpec) -> Rational:
    """The bound the pattern family approaches (``x`` to infinity for III)."""
    b = spec.config.beta
    if spec.pattern == "SUMW_LB":
        return ratio(3 - b, 1 + b)
    return cr_bound_pfsum(spec.eta, spec.config)


def run_tight(inst: TightInstance) -> TightRun:
    """Run the instance end to end against the exact offline optimum."""
    config = inst.spec.config
    seq = inst.sequence
    trace = run_online(inst.algorithm, seq, ScheduledPredictor(seq, inst.predictions), config)
    opt = opt_dp(seq, config)
    whole = ratio(trace.total, opt.total_cost)
    part = ratio(trace.cost_in(inst.interval), opt.cost_in(seq, inst.interval))
    labels = tuple(classify_patterns(trace, opt, config)) if inst.algorithm.kind == "PFSUM" else ()
    return TightRun(inst, trace, opt, whole, part, trace.eta, labels)


def counterexample(config: BahncardConfig, p) -> Tuple[RequestSequence, Dict[Rational, Rational]]:
    """One cheap ticket at time 0 whose future is (wrongly) predicted at gamma.

    Rules that trust the prediction alone buy a card for a ticket worth
    ``p``, so their ratio ``(C + beta p) / p`` grows without bound as ``p``
    shrinks; PFSUM also needs gamma of past spending and stays at ratio 1.
    """
    p = rational(p)
    if p <= 0:
        raise RegimeMismatch("the ticket price must be positive")
    return RequestSequence([(0, p)]), {0: config.gamma}
