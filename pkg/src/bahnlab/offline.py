"""Optimal offline cost: an exact dynamic program and a brute-force oracle.

The program only considers purchases at request times and never lets two
cards overlap.  Both restrictions lose nothing: shifting a purchase forward
to the next request covered by it keeps every discount, and an overlapping
second card costs ``C`` while the overlap is discounted only once anyway.
The exhaustive oracle does not rely on the second fact; it scores every
subset of request times under the no-double-discount rule.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Tuple

from .core import (
    BahncardConfig,
    Rational,
    RequestSequence,
    discounted,
    evaluate_schedule,
    format_rational,
    rational,
)
from .errors import TooLarge

BRUTEFORCE_LIMIT = 15


@dataclass(frozen=True)
class OptSolution:
    total_cost: Rational
    schedule: Tuple[Rational, ...]
    per_request_cost: Tuple[Rational, ...]
    config: BahncardConfig

    def cost_in(self, sequence: RequestSequence, window) -> Rational:
        """Cost inside ``window``: tickets there plus cards bought there."""
        a, b = window.index_range(sequence.times)
        total = sum(self.per_request_cost[a:b], 0)
        total += self.config.C * sum(1 for tau in self.schedule if tau in window)
        return rational(total)

    def to_dict(self) -> dict:
        f = format_rational
        return {
            "total_cost": f(self.total_cost),
            "schedule": [f(t) for t in self.schedule],
            "per_request_cost": [f(c) for c in self.per_request_cost],
        }


def opt_dp(seq: RequestSequence, config: BahncardConfig) -> OptSolution:
    """Minimum total cost and a schedule achieving it.

    ``f(i)`` is the cheapest way to serve requests ``i..n-1`` with no card
    valid at ``t_i``: either pay ``p_i`` and move on, or buy at ``t_i`` and jump
    to the first request at or after ``t_i + T``.  Ties go to fewer cards and
    then to buying earlier.
    """
    times, n = seq.times, len(seq)
    C, beta, T = config.C, config.beta, config.T
    cost = [0] * (n + 1)
    cards = [0] * (n + 1)
    buy = [False] * n
    jump = [n] * n
    for i in range(n - 1, -1, -1):
        k = bisect_left(times, times[i] + T, i + 1)
        jump[i] = k
        skip_cost = seq.prices[i] + cost[i + 1]
        skip_cards = cards[i + 1]
        buy_cost = C + discounted(beta, seq.range_cost(i, k)) + cost[k]
        buy_cards = cards[k] + 1
        if (buy_cost, buy_cards) <= (skip_cost, skip_cards):
            cost[i], cards[i], buy[i] = buy_cost, buy_cards, True
        else:
            cost[i], cards[i] = skip_cost, skip_cards
    schedule = []
    i = 0
    while i < n:
        if buy[i]:
            schedule.append(times[i])
            i = jump[i]
        else:
            i += 1
    ledger, per, _ = evaluate_schedule(seq, schedule, config)
    total = rational(cost[0])
    if ledger.total != total:  # pragma: no cover - internal consistency guard
        raise AssertionError("dp schedule does not reproduce dp cost")
    return OptSolution(total, tuple(schedule), per, config)


def opt_bruteforce(seq: RequestSequence, config: BahncardConfig) -> Rational:
    """Minimum over every subset of request times used as purchase times.

    Each subset is scored directly: a request is discounted once if any card
    in the subset covers it.  Arithmetic runs on integers scaled by a common
    denominator so the ``2^n`` loop stays fast; the result is exact.
    """
    n = len(seq)
    if n > BRUTEFORCE_LIMIT:
        raise TooLarge(f"{n} requests exceed the brute-force limit of {BRUTEFORCE_LIMIT}")
    if n == 0:
        return 0
    beta = Fraction(config.beta)
    scale = 1
    for v in (*seq.prices, config.C):
        scale = lcm(scale, Fraction(v).denominator)
    bn, bd = beta.numerator, beta.denominator
    P = [int(p * scale) for p in seq.prices]
    card = int(config.C * scale) * bd
    times, T = seq.times, config.T
    cover = [sum(1 << j for j in range(n) if times[i] <= times[j] < times[i] + T) for i in range(n)]
    size = 1 << n
    price_sum = [0] * size
    covered = [0] * size
    count = [0] * size
    for s in range(1, size):
        low = s & -s
        i = low.bit_length() - 1
        rest = s ^ low
        price_sum[s] = price_sum[rest] + P[i]
        covered[s] = covered[rest] | cover[i]
        count[s] = count[rest] + 1
    base = bd * price_sum[-1]
    best = base
    for s in range(1, size):
        total = count[s] * card + (bn - bd) * price_sum[covered[s]] + base
        if total < best:
            best = total
    return rational(Fraction(best, scale * bd))
