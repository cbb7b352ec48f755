from fractions import Fraction

import pytest

from bahnlab.analysis import TightInstanceSpec, cr_bound_pfsum, pattern_bound, run_tight, tight_instance
from bahnlab.analysis.lemmas import check_lemmas
from bahnlab.core import BahncardConfig
from bahnlab.errors import RegimeMismatch

STANDARD = BahncardConfig(100, Fraction(4, 5), 10)
G = Fraction(STANDARD.gamma)

GRID = [
    ("SUMW_LB", 0, 0),
    *[("P_IV", e, 0) for e in (0, G / 100, G / 4, G, 3 * G)],
    *[("P_V", e, 0) for e in (0, G / 10**6, G / 2, G, 2 * G)],
    *[("P6", e, 1) for e in (0, G / 10**6, G / 2, G, 2 * G)],
    *[("P_III", e, x) for e in (0, G / 3, G, 2 * G) for x in (0, 1, 3)],
]


@pytest.mark.parametrize("pattern, eta, x", GRID)
def test_instance_runs_as_designed(pattern, eta, x):
    inst = tight_instance(TightInstanceSpec(pattern, STANDARD, eta, x=x))
    run = run_tight(inst)
    assert run.matches_design
    assert run.eta <= eta
    # achieved value approaches the limit from below, within the epsilon slack
    assert inst.expected_ratio - inst.tolerance <= run.interval_ratio <= inst.expected_ratio
    assert inst.expected_ratio <= pattern_bound(inst.spec)
    if inst.algorithm.kind == "PFSUM":
        assert run.ratio <= cr_bound_pfsum(run.eta, STANDARD)
        assert check_lemmas(run.trace) == []


@pytest.mark.parametrize("pattern", ["P_IV", "P_V", "P6"])
def test_single_interval_limits_equal_the_bound(pattern):
    x = 1 if pattern == "P6" else 0
    for eta in (0, G / 2, G, 2 * G):
        inst = tight_instance(TightInstanceSpec(pattern, STANDARD, eta, x=x))
        assert inst.expected_ratio == cr_bound_pfsum(eta, STANDARD)


def test_sum_w_lower_bound_other_beta():
    config = BahncardConfig(100, Fraction(1, 2), 10)
    inst = tight_instance(TightInstanceSpec("SUMW_LB", config))
    assert inst.expected_ratio == Fraction(5, 3)
    assert len(inst.sequence) == 5
    run = run_tight(inst)
    assert run.trace.schedule == (0, 12) and run.opt.schedule == (4,)
    assert abs(run.ratio - Fraction(5, 3)) / Fraction(5, 3) < Fraction(1, 100)


def test_sum_w_decisions_along_the_instance():
    inst = tight_instance(TightInstanceSpec("SUMW_LB", STANDARD))
    run = run_tight(inst)
    t1, _, t3, t4, _ = inst.sequence.times
    assert t1 in run.trace.schedule and t3 not in run.trace.schedule and t4 in run.trace.schedule


def test_on_on_ratio_exceeds_simplified_closed_form():
    # (2g + (2 - 2b) e) / ((1 + b) g + b e) understates what the instance achieves
    eta = G / 2
    b = STANDARD.beta
    closed_form = (2 * G + (2 - 2 * b) * eta) / ((1 + b) * G + b * eta)
    run = run_tight(tight_instance(TightInstanceSpec("P6", STANDARD, eta, x=1)))
    assert closed_form == 1
    assert run.interval_ratio > Fraction(118, 100)


def test_p3_limit_grows_with_x():
    eta = G / 2
    values = [tight_instance(TightInstanceSpec("P_III", STANDARD, eta, x=x)).expected_ratio for x in (0, 1, 5, 50)]
    assert values == sorted(values) and values[-1] < cr_bound_pfsum(eta, STANDARD)
    assert cr_bound_pfsum(eta, STANDARD) - values[-1] < Fraction(1, 100)


def test_unpacks_like_a_triple():
    seq, predictions, expected = tight_instance(TightInstanceSpec("P_IV", STANDARD, 0))
    assert len(seq) == 2 and expected == Fraction(10, 9) and predictions


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(pattern="SUMW_LB", eta=1),
        dict(pattern="P_IV", eta=0, x=1),
        dict(pattern="P_V", eta=0, x=2),
        dict(pattern="P6", eta=0, x=2),
        dict(pattern="P_IV", eta=-1),
        dict(pattern="P_VII", eta=0),
        dict(pattern="P_IV", eta=0, epsilon=G),
        dict(pattern="P_IV", eta=2 * G, branch="eta<=gamma"),
    ],
)
def test_regime_mismatch(kwargs):
    with pytest.raises(RegimeMismatch):
        tight_instance(TightInstanceSpec(config=STANDARD, **kwargs))
