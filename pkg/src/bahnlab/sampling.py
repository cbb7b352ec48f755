"""Seeded, portable random variates.

Everything draws from ``random.Random`` (Mersenne Twister), whose
``random()`` stream is stable across Python versions and platforms.  Each
non-uniform variate uses a pinned transform of uniforms so that golden
outputs do not depend on library sampling internals:

* exponential and Lomax: inverse CDF on ``1 - U``;
* normal: Box-Muller, cosine branch, two uniforms per variate.

Prices are quantised to cents and returned as exact rationals.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Rational, rational

PRICE_DISTRIBUTIONS = ("uniform", "normal", "pareto")


def derive_seed(*parts) -> int:
    """64-bit seed from an ordered tuple of labels and numbers."""
    text = "\x1f".join(str(p) for p in parts).encode()
    return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "big")


def make_rng(*parts) -> random.Random:
    return random.Random(derive_seed(*parts))


def exponential(rng: random.Random, mean: float) -> float:
    return -mean * math.log(1.0 - rng.random())


def lomax(rng: random.Random, shape: float, scale: float) -> float:
    return scale * ((1.0 - rng.random()) ** (-1.0 / shape) - 1.0)


def normal(rng: random.Random, mu: float, sigma: float) -> float:
    u1 = rng.random()
    u2 = rng.random()
    z = math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(2.0 * math.pi * u2)
    return mu + sigma * z


def to_cents(x: float) -> Rational:
    return rational(Fraction(round(x * 100), 100))


@dataclass(frozen=True)
class PriceDistribution:
    """Ticket-price law.

    ``uniform`` draws from ``[low, high]``; ``normal`` from ``N(mean, sd)``
    clamped at zero; ``pareto`` is a Lomax law with the given shape and scale.
    """

    kind: str = "uniform"
    low: float = 25.0
    high: float = 75.0
    mean: float = 50.0
    sd: float = 5.0
    shape: float = 2.0
    scale: float = 50.0

    def __post_init__(self):
        if self.kind not in PRICE_DISTRIBUTIONS:
            raise ValueError(f"unknown price distribution {self.kind!r}")
        if self.kind == "uniform" and not 0 <= self.low <= self.high:
            raise ValueError("uniform bounds must satisfy 0 <= low <= high")
        if self.kind == "normal" and self.sd < 0:
            raise ValueError("normal sd must be non-negative")
        if self.kind == "pareto" and (self.shape <= 0 or self.scale <= 0):
            raise ValueError("pareto shape and scale must be positive")

    def sample_float(self, rng: random.Random) -> float:
        if self.kind == "uniform":
            return self.low + (self.high - self.low) * rng.random()
        if self.kind == "normal":
            return max(0.0, normal(rng, self.mean, self.sd))
        return lomax(rng, self.shape, self.scale)

    def sample(self, rng: random.Random) -> Rational:
        return to_cents(self.sample_float(rng))
