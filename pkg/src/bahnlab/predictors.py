"""Short-term predictions of future ticket cost and their realised error.

A predictor answers one question: the total price of requests inside a time
window.  Algorithms ask about ``[t, t+T)`` (or ``(t, t+w]`` for SUM_w); the
run engine logs each answer next to the true value so the maximum error can
be measured afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

from .core import (
    Interval,
    Rational,
    RequestSequence,
    future_window,
    rational,
    window_cost,
)
from .errors import NonDayGranular
from .sampling import PriceDistribution, make_rng

# ---------------------------------------------------------------------------
# query log


@dataclass(frozen=True)
class PredictionQuery:
    query_time: Rational
    window: Interval
    predicted: Rational
    true_value: Rational

    @property
    def window_length(self) -> Rational:
        return self.window.length

    @property
    def error(self) -> Rational:
        return abs(self.predicted - self.true_value)


@dataclass
class PredictionLog:
    """Queries in the order they were made."""

    queries: List[PredictionQuery] = field(default_factory=list)

    def append(self, q: PredictionQuery) -> None:
        if self.queries and q.query_time < self.queries[-1].query_time:
            raise ValueError("prediction queries must arrive in time order")
        self.queries.append(q)

    def __len__(self):
        return len(self.queries)

    def __iter__(self):
        return iter(self.queries)


def measure_eta(log) -> Rational:
    """Largest absolute prediction error in ``log`` (0 when empty)."""
    worst = 0
    for q in log:
        e = q.error
        if e > worst:
            worst = e
    return worst


# ---------------------------------------------------------------------------
# predictors


class Predictor:
    """Base class.  Subclasses implement :meth:`predict`."""

    name = "predictor"

    def predict(self, window: Interval) -> Rational:  # pragma: no cover - abstract
        raise NotImplementedError


class PerfectPredictor(Predictor):
    name = "perfect"

    def __init__(self, seq: RequestSequence):
        self.seq = seq

    def predict(self, window):
        return window_cost(self.seq, window)


class DerivedPredictor(Predictor):
    """Reads window costs off a perturbed copy of the instance."""

    name = "derived"

    def __init__(self, perturbed: RequestSequence):
        self.perturbed = perturbed

    def predict(self, window):
        return window_cost(self.perturbed, window)


class SyntheticPredictor(Predictor):
    """True window cost shifted by a fixed bias and clamped at zero."""

    name = "synthetic"

    def __init__(self, seq: RequestSequence, bias):
        self.seq = seq
        self.bias = rational(bias)

    def predict(self, window):
        return max(0, window_cost(self.seq, window) + self.bias)


class ScheduledPredictor(Predictor):
    """Answers from a table keyed by window start, falling back to the truth.

    Used to replay hand-built prediction schedules (tight instances,
    robustness counterexamples).
    """

    name = "scheduled"

    def __init__(self, seq: RequestSequence, schedule: Mapping):
        self.seq = seq
        self.schedule: Dict[Rational, Rational] = {rational(k): rational(v) for k, v in schedule.items()}
        for v in self.schedule.values():
            if v < 0:
                raise ValueError("scheduled predictions must be non-negative")

    def predict(self, window):
        hit = self.schedule.get(window.lo)
        if hit is not None:
            return hit
        return window_cost(self.seq, window)


def perfect_predict(seq: RequestSequence, t, T) -> Rational:
    return window_cost(seq, future_window(rational(t), rational(T)))


def derived_predict(perturbed: RequestSequence, t, T) -> Rational:
    return window_cost(perturbed, future_window(rational(t), rational(T)))


def synthetic_predict(seq: RequestSequence, t, T, bias) -> Rational:
    return max(0, perfect_predict(seq, t, T) + rational(bias))


# ---------------------------------------------------------------------------
# perturbation


REMOVE_FIRST = "remove_first"
NOISE_FIRST = "noise_first"


@dataclass(frozen=True)
class PerturbationParams:
    """Per-day perturbation with probability ``p``.

    ``order`` fixes which coin is applied first.  With ``streams="shared"``
    both coins and the noise come from one generator; ``"independent"`` gives
    the removal coin its own stream.
    """

    p: Rational
    noise: PriceDistribution = PriceDistribution()
    seed: int = 0
    order: str = REMOVE_FIRST
    streams: str = "shared"

    def __post_init__(self):
        object.__setattr__(self, "p", rational(self.p))
        if not 0 <= self.p <= 1:
            raise ValueError("perturbation probability must lie in [0, 1]")
        if self.order not in (REMOVE_FIRST, NOISE_FIRST):
            raise ValueError(f"unknown order {self.order!r}")
        if self.streams not in ("shared", "independent"):
            raise ValueError(f"unknown streams mode {self.streams!r}")


def perturb_instance(
    seq: RequestSequence,
    params: PerturbationParams,
    day_grid: Optional[Sequence[int]] = None,
) -> RequestSequence:
    """Randomly remove requests and add noise, one day at a time.

    Every day flips two coins with probability ``p``: one removes the day's
    request, the other adds a fresh price sample to it (or creates a request
    priced at the sample if the day is empty).  Both coins are always drawn,
    so the random stream does not depend on the outcomes.
    """
    days = {}
    for t, p in seq:
        if not isinstance(t, int):
            raise NonDayGranular(f"request time {t} is not an integer day")
        days[t] = p
    if day_grid is None:
        day_grid = range(0, (max(days) + 1) if days else 0)
    if params.p == 0:
        return seq
    threshold = float(params.p)
    main = make_rng("perturb", params.seed)
    removal = make_rng("perturb-removal", params.seed) if params.streams == "independent" else main

    def remove(state):
        hit = removal.random() < threshold
        return None if hit else state

    def noise(state):
        if main.random() < threshold:
            x = params.noise.sample(main)
            return x if state is None else state + x
        return state

    steps = (remove, noise) if params.order == REMOVE_FIRST else (noise, remove)
    out = []
    for d in sorted(set(day_grid) | set(days)):
        state = days.get(d)
        for step in steps:
            state = step(state)
        if state is not None:
            out.append((d, state))
    return RequestSequence(out)
