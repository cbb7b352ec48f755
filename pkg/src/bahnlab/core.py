"""Domain model, exact cost accounting and epoch decomposition.

All times, prices and costs are exact rationals.  A rational is either a
Python ``int`` or a ``fractions.Fraction``; :func:`rational` normalises any
accepted input to one of the two (integers stay ``int`` because they are much
faster to compare and add).
"""

from __future__ import annotations

import decimal
import math
import numbers
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import DuplicateTime, NegativeValue, NonMonotonic, OverlappingCards

Rational = Union[int, Fraction]


def rational(value) -> Rational:
    """Convert ``value`` to an exact rational.

    Accepts ints, Fractions, Decimals, strings such as ``"0.8"``, ``"4/5"`` or
    ``"12"``, and floats (converted through their shortest repr, so ``0.8``
    becomes ``4/5`` rather than the binary expansion).
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        q = value
    elif isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"not a finite number: {value!r}")
        q = Fraction(repr(value))
    elif isinstance(value, (str, decimal.Decimal)):
        text = str(value).strip()
        if not text:
            raise ValueError("empty rational")
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational {value!r}") from exc
    elif isinstance(value, numbers.Rational):
        q = Fraction(value.numerator, value.denominator)
    else:
        raise TypeError(f"cannot interpret {value!r} as a rational")
    return q.numerator if q.denominator == 1 else q


def ratio(num, den) -> Rational:
    """Exact ``num / den`` (never a float)."""
    q = Fraction(num) / Fraction(den)
    return q.numerator if q.denominator == 1 else q


def format_rational(value) -> str:
    """Render a rational exactly: a finite decimal when one exists, else ``a/b``."""
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    places = max(twos, fives)
    scaled = q * 10**places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class BahncardConfig:
    """Card price ``C``, discount factor ``beta`` and validity ``T``."""

    C: Rational
    beta: Rational
    T: Rational

    def __post_init__(self):
        object.__setattr__(self, "C", rational(self.C))
        object.__setattr__(self, "beta", rational(self.beta))
        object.__setattr__(self, "T", rational(self.T))
        if self.C <= 0:
            raise ValueError("card cost C must be positive")
        if not 0 <= self.beta < 1:
            raise ValueError("discount beta must lie in [0, 1)")
        if self.T <= 0:
            raise ValueError("validity T must be positive")

    @property
    def gamma(self) -> Rational:
        return ratio(self.C, 1 - self.beta)


def gamma(config: BahncardConfig) -> Rational:
    """Break-even ticket volume ``C / (1 - beta)``."""
    return config.gamma


# ---------------------------------------------------------------------------
# intervals


@dataclass(frozen=True)
class Interval:
    """A time interval with independently open or closed endpoints."""

    lo: Rational
    hi: Rational
    lo_closed: bool = True
    hi_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lo", rational(self.lo))
        object.__setattr__(self, "hi", rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @classmethod
    def closed_open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, False)

    @classmethod
    def open_closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, True)

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, False)

    def __contains__(self, t) -> bool:
        if t < self.lo or t > self.hi:
            return False
        if t == self.lo and not self.lo_closed:
            return False
        if t == self.hi and not self.hi_closed:
            return False
        return True

    @property
    def length(self) -> Rational:
        return self.hi - self.lo

    @property
    def empty(self) -> bool:
        if self.lo < self.hi:
            return False
        return not (self.lo_closed and self.hi_closed)

    def index_range(self, times: Sequence) -> Tuple[int, int]:
        """Slice ``[a, b)`` of a sorted ``times`` list lying inside the interval."""
        a = bisect_left(times, self.lo) if self.lo_closed else bisect_right(times, self.lo)
        b = bisect_right(times, self.hi) if self.hi_closed else bisect_left(times, self.hi)
        return a, max(a, b)

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_rational(self.lo)}, {format_rational(self.hi)}{right}"


def recent_window(t, length) -> Interval:
    """``(t - length, t]``."""
    return Interval.open_closed(t - length, t)


def future_window(t, length) -> Interval:
    """``[t, t + length)``."""
    return Interval.closed_open(t, t + length)


# ---------------------------------------------------------------------------
# request sequences


class TravelRequest(NamedTuple):
    time: Rational
    price: Rational


def validate_sequence(requests) -> None:
    """Raise if times are not strictly increasing or any field is negative.

    The error carries the index of the first offending request.
    """
    prev = None
    for i, (t, p) in enumerate(requests):
        if t < 0 or p < 0:
            raise NegativeValue(i)
        if prev is not None:
            if t == prev:
                raise DuplicateTime(i)
            if t < prev:
                raise NonMonotonic(i)
        prev = t


class RequestSequence:
    """Immutable, strictly time-ordered list of travel requests.

    Prefix sums of prices are kept so that any window cost costs two binary
    searches and one subtraction.
    """

    __slots__ = ("times", "prices", "_prefix")

    def __init__(self, requests: Iterable = ()):
        pairs = [TravelRequest(rational(t), rational(p)) for t, p in requests]
        validate_sequence(pairs)
        self.times: Tuple[Rational, ...] = tuple(r.time for r in pairs)
        self.prices: Tuple[Rational, ...] = tuple(r.price for r in pairs)
        prefix = [0]
        acc = 0
        for p in self.prices:
            acc += p
            prefix.append(acc)
        self._prefix = tuple(prefix)

    @property
    def requests(self) -> Tuple[TravelRequest, ...]:
        return tuple(TravelRequest(t, p) for t, p in zip(self.times, self.prices))

    def __len__(self) -> int:
        return len(self.times)

    def __iter__(self) -> Iterator[TravelRequest]:
        return iter(self.requests)

    def __getitem__(self, i) -> TravelRequest:
        return TravelRequest(self.times[i], self.prices[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RequestSequence):
            return NotImplemented
        return self.times == other.times and self.prices == other.prices

    def __hash__(self) -> int:
        return hash((self.times, self.prices))

    def __repr__(self) -> str:
        body = ", ".join(f"({format_rational(t)}, {format_rational(p)})" for t, p in self)
        return f"RequestSequence([{body}])"

    def range_cost(self, a: int, b: int) -> Rational:
        """Total price of requests with index in ``[a, b)``."""
        if b <= a:
            return 0
        return self._prefix[b] - self._prefix[a]

    def cost(self, window: Interval) -> Rational:
        a, b = window.index_range(self.times)
        return self.range_cost(a, b)

    @property
    def total(self) -> Rational:
        return self._prefix[-1]


def discounted(beta, p) -> Rational:
    """Exact ``beta * p``, staying in ``int`` whenever the product is integral."""
    if p.__class__ is int:
        if beta.__class__ is int:
            return beta * p
        num = beta.numerator * p
        if num % beta.denominator == 0:
            return num // beta.denominator
    return rational(beta * p)


def price_scale(*seqs: RequestSequence, config: Optional[BahncardConfig] = None) -> int:
    """Smallest factor turning every price, discounted price and ``C`` into an integer."""
    scale = 1
    values = [p for seq in seqs for p in seq.prices]
    if config is not None:
        values.append(config.C)
    for v in values:
        if v.__class__ is not int:
            scale = math.lcm(scale, v.denominator)
    if config is not None and config.beta.__class__ is not int:
        scale *= config.beta.denominator
    return scale


def scale_prices(seq: RequestSequence, factor) -> RequestSequence:
    """Same requests with every price multiplied by ``factor``.

    Ratios of costs, and prediction errors relative to gamma, are unchanged
    when prices and ``C`` are scaled together; integer prices make the
    arithmetic much faster.
    """
    return RequestSequence((t, p * factor) for t, p in zip(seq.times, seq.prices))


def window_cost(seq: RequestSequence, window: Interval) -> Rational:
    """Sum of prices of requests whose time lies in ``window``."""
    return seq.cost(window)


def window_ranges(times: Sequence, T, t_lo=None, t_hi=None) -> Iterator[Tuple[int, int]]:
    """Every distinct index range ``[i, j]`` some window ``[t, t+T)`` selects.

    Only windows with ``t_lo < t < t_hi`` are considered when the bounds are
    given.  Windows holding no request are skipped.  The enumeration is
    output-sensitive: ``O(n * k)`` for ``k`` requests per window.
    """
    n = len(times)
    for i in range(n):
        below = times[i - 1] if i > 0 else None
        for j in range(i, n):
            if times[j] - times[i] >= T:
                break
            lower = [x for x in (below, times[j] - T, t_lo) if x is not None]
            low = max(lower)
            upper = times[i] if j + 1 == n else min(times[i], times[j + 1] - T)
            if low >= upper:
                continue
            if t_hi is not None and low >= t_hi:
                continue
            yield i, j


# ---------------------------------------------------------------------------
# schedules and ledgers


PurchaseSchedule = Tuple[Rational, ...]


def coverage(times: Sequence, schedule: Sequence, T) -> Tuple[bool, ...]:
    """For each request time, whether some card ``[mu, mu+T)`` is valid then."""
    sched = sorted(schedule)
    out = []
    for t in times:
        # all cards share length T, so the latest start <= t expires last
        k = bisect_right(sched, t)
        out.append(k > 0 and t < sched[k - 1] + T)
    return tuple(out)


@dataclass(frozen=True)
class CostLedger:
    cards_bought: int
    card_cost_total: Rational
    reduced_ticket_total: Rational
    regular_ticket_total: Rational

    @property
    def total(self) -> Rational:
        return self.card_cost_total + self.reduced_ticket_total + self.regular_ticket_total


def evaluate_schedule(seq: RequestSequence, schedule: Sequence, config: BahncardConfig):
    """Cost of serving ``seq`` under an arbitrary purchase schedule.

    A request covered by one or more cards pays ``beta * p`` once; overlapping
    cards never stack.  Returns ``(ledger, per_request_costs, reduced_flags)``.
    """
    reduced = coverage(seq.times, schedule, config.T)
    per = []
    red_total = 0
    reg_total = 0
    for p, r in zip(seq.prices, reduced):
        if r:
            c = discounted(config.beta, p)
            red_total += c
        else:
            c = p
            reg_total += c
        per.append(rational(c))
    ledger = CostLedger(len(schedule), config.C * len(schedule), rational(red_total), rational(reg_total))
    return ledger, tuple(per), reduced


def regular_recent_cost(trace, t, l) -> Rational:
    """Regular-only cost of ``trace`` over ``(t - l, t]``."""
    seq = trace.sequence
    a, b = recent_window(t, l).index_range(seq.times)
    total = 0
    for i in range(a, b):
        if not trace.reduced[i]:
            total += seq.prices[i]
    return total


# ---------------------------------------------------------------------------
# epochs


@dataclass(frozen=True)
class Epoch:
    index: int
    start: Rational
    end: Rational
    on_phase: Optional[Interval]
    off_phase: Interval


@dataclass(frozen=True)
class EpochDecomposition:
    epochs: Tuple[Epoch, ...]
    horizon: Rational

    def __iter__(self):
        return iter(self.epochs)

    def __len__(self):
        return len(self.epochs)

    def on_phases(self):
        return [e.on_phase for e in self.epochs if e.on_phase is not None]

    def off_phases(self):
        return [e.off_phase for e in self.epochs]


def epoch_decomposition(schedule: Sequence, config: BahncardConfig, horizon) -> EpochDecomposition:
    """Split ``[0, horizon)`` into epochs at the purchase times of ``schedule``.

    Epoch 0 is off-only.  Epoch ``j`` starts at the ``j``-th purchase, has an on
    phase of length ``T`` (clipped at the epoch end) and an off phase after.
    """
    horizon = rational(horizon)
    mus = [rational(m) for m in schedule]
    T = config.T
    for j in range(1, len(mus)):
        if mus[j] - mus[j - 1] < T:
            raise OverlappingCards(f"purchases at {mus[j - 1]} and {mus[j]} are closer than T={T}")
    if mus and mus[0] < 0:
        raise ValueError("purchase before time 0")
    if mus and horizon < mus[-1]:
        raise ValueError("horizon precedes the last purchase")
    bounds = [0] + mus + [horizon]
    epochs = [Epoch(0, 0, bounds[1], None, Interval.closed_open(0, bounds[1]))]
    for j, mu in enumerate(mus, start=1):
        end = bounds[j + 1]
        switch = min(mu + T, end)
        epochs.append(Epoch(j, mu, end, Interval.closed_open(mu, switch), Interval.closed_open(switch, end)))
    return EpochDecomposition(tuple(epochs), horizon)


# ---------------------------------------------------------------------------
# offline-structure checkers


def lemma1_violations(seq: RequestSequence, schedule: Sequence, config: BahncardConfig):
    """Windows ``[t, t+T)`` costing at least gamma but holding no reduced request.

    Any optimal schedule must return an empty list.
    """
    reduced = coverage(seq.times, schedule, config.T)
    g = config.gamma
    bad = []
    for i, j in window_ranges(seq.times, config.T):
        if seq.range_cost(i, j + 1) >= g and not any(reduced[i : j + 1]):
            bad.append((i, j))
    return bad


def corollary1_violations(seq: RequestSequence, schedule: Sequence, config: BahncardConfig):
    """Purchase times whose true future cost ``c([t, t+T))`` is below gamma."""
    g = config.gamma
    return [mu for mu in schedule if seq.cost(future_window(mu, config.T)) < g]
