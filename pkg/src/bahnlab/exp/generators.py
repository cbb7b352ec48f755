"""Traveller profiles.

A commuter travels every day of the horizon.  An occasional traveller's gaps
between trips are exponential with mean ``gap_mean`` days, rounded up to a
whole day (never less than one), so there is at most one request per day.
Prices are i.i.d. draws from the profile's price law, in cents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..core import Rational, RequestSequence, rational
from ..sampling import PriceDistribution, exponential, make_rng

PROFILES = ("commuter", "occasional")


@dataclass(frozen=True)
class ProfileParams:
    profile: str = "commuter"
    horizon_days: int = 2000
    gap_mean: Rational = 2
    price_dist: PriceDistribution = field(default_factory=PriceDistribution)
    rng_seed: int = 0

    def __post_init__(self):
        if self.profile not in PROFILES:
            raise ValueError(f"unknown profile {self.profile!r}")
        if not isinstance(self.horizon_days, int) or self.horizon_days < 1:
            raise ValueError("horizon_days must be a positive integer")
        object.__setattr__(self, "gap_mean", rational(self.gap_mean))
        if self.gap_mean <= 0:
            raise ValueError("gap_mean must be positive")
        if isinstance(self.price_dist, str):
            object.__setattr__(self, "price_dist", PriceDistribution(self.price_dist))


def travel_days(params: ProfileParams, rng) -> list:
    if params.profile == "commuter":
        return list(range(params.horizon_days))
    days = []
    day = 0
    mean = float(params.gap_mean)
    while day < params.horizon_days:
        days.append(day)
        day += max(1, math.ceil(exponential(rng, mean)))
    return days


def generate_instance(params: ProfileParams) -> RequestSequence:
    """Deterministic in ``params`` (including the seed).

    Days and prices use separate streams, so switching the price law leaves
    the travel days unchanged.
    """
    days = travel_days(params, make_rng("days", params.rng_seed))
    prices = make_rng("prices", params.rng_seed)
    return RequestSequence([(d, params.price_dist.sample(prices)) for d in days])
