"""Closed-form ratio bounds for the implemented algorithms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..algos import AlgorithmSpec
from ..core import BahncardConfig, Rational, ratio, rational

UPPER = "upper"
LOWER = "lower"
UNBOUNDED = "unbounded"
NOT_AVAILABLE = "not-available"


@dataclass(frozen=True)
class Bound:
    """A ratio bound.

    ``kind`` is ``upper`` (ratios never exceed ``value``), ``lower`` (some
    instance comes arbitrarily close to ``value``; says nothing about a
    single run), ``unbounded`` or ``not-available``.
    """

    kind: str
    value: Optional[Rational] = None

    def admits(self, r) -> Optional[bool]:
        """Whether ratio ``r`` is consistent with the bound (``None`` if moot)."""
        if self.kind == UPPER:
            return r <= self.value
        if self.kind == UNBOUNDED:
            return True
        return None


def cr_bound_pfsum(eta, config: BahncardConfig) -> Rational:
    """Competitive ratio of PFSUM as a function of the prediction error."""
    eta = rational(eta)
    if eta < 0:
        raise ValueError("eta must be non-negative")
    g, b = config.gamma, config.beta
    den = (1 + b) * g + b * eta
    if eta <= g:
        return ratio(2 * g + (2 - b) * eta, den)
    return ratio((3 - b) * g + eta, den)


def pfsum_robustness(config: BahncardConfig) -> Rational:
    """Supremum of :func:`cr_bound_pfsum` over all errors (never attained)."""
    return ratio(1, config.beta) if config.beta else None


def bound_for(spec: AlgorithmSpec, eta, config: BahncardConfig) -> Bound:
    eta = rational(eta)
    b = config.beta
    if spec.kind == "SUM":
        return Bound(UPPER, rational(2 - b))
    if spec.kind == "FSUM":
        return Bound(UPPER, ratio(2, 1 + b)) if eta == 0 else Bound(UNBOUNDED)
    if spec.kind == "SUM_W":
        return Bound(LOWER, ratio(3 - b, 1 + b)) if eta == 0 else Bound(UNBOUNDED)
    if spec.kind == "PFSUM":
        return Bound(UPPER, cr_bound_pfsum(eta, config))
    return Bound(NOT_AVAILABLE)
