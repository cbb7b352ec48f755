from fractions import Fraction

from bahnlab.algos import AlgorithmSpec, run_online
from bahnlab.analysis import (
    TightInstanceSpec,
    chain_annotations,
    classify_patterns,
    describe,
    run_tight,
    tight_instance,
)
from bahnlab.core import RequestSequence
from bahnlab.offline import opt_dp
from bahnlab.predictors import ScheduledPredictor


def labels(pairs, config, schedule=None):
    seq = RequestSequence(pairs)
    tr = run_online(AlgorithmSpec("PFSUM"), seq, ScheduledPredictor(seq, schedule or {}), config)
    return classify_patterns(tr, opt_dp(seq, config))


def test_same_instant_is_I(small):
    (lab,) = labels([(0, 10), (4, 10), (6, 40)], small)
    assert lab.kind == "I" and lab.pfsum_cards == lab.opt_cards == (4,)
    assert lab.pfsum_cost == lab.opt_cost == 35


def test_opt_card_in_off_phase_is_II(small):
    (lab,) = labels([(0, 8), (1, 8), (2, 8)], small)
    assert lab.kind == "II" and lab.pfsum_cards == () and lab.opt_cards == (0,)
    assert str(lab.interval) == "[0, 5)"


def test_lone_pfsum_card_is_VI_without_inner_cards(small):
    (lab,) = labels([(0, 10), (1, 10)], small, {1: 20})
    assert (lab.kind, lab.x, lab.augmented) == ("VI", 0, False)
    (lab,) = labels([(0, 20)], small, {0: 20})
    assert (lab.kind, lab.x, lab.augmented) == ("VI", 0, True)


def test_chain_links_back_to_opening_component(small):
    labs = labels([(0, 8), (1, 8), (2, 8), (20, 10), (21, 10)], small, {21: 20})
    assert [lab.kind for lab in labs] == ["II", "VI"]
    assert labs[1].chain == (0, 1)
    (chain,) = chain_annotations(labs)
    assert chain.complete and chain.pfsum_cost == labs[0].pfsum_cost + labs[1].pfsum_cost
    rows = describe(labs)
    assert rows[1]["chain"] == [0, 1] and rows[0]["chain"] is None


def test_tight_instances_have_the_designed_shape(standard):
    g = Fraction(standard.gamma)
    cases = [
        ("P_IV", 0, 0, ["IV"]),
        ("P_V", 0, 0, ["II", "V"]),
        ("P_V", 2 * g, 0, ["II", "V"]),
        ("P6", g / 2, 1, ["II", "VI"]),
        ("P_III", g / 3, 2, ["III"]),
    ]
    for pattern, eta, x, kinds in cases:
        run = run_tight(tight_instance(TightInstanceSpec(pattern, standard, eta, x=x)))
        assert [lab.kind for lab in run.labels] == kinds
        assert run.labels[-1].x == x
        assert run.labels[-1].interval == run.instance.interval
    six = run_tight(tight_instance(TightInstanceSpec("P6", standard, g / 2, x=1))).labels[-1]
    assert six.augmented and six.chain is None


def test_labels_tile_card_coverage(standard):
    pairs = [(t, 20 + (37 * t) % 90) for t in range(0, 300, 1)]
    seq = RequestSequence(pairs)
    tr = run_online(AlgorithmSpec("PFSUM"), seq, ScheduledPredictor(seq, {}), standard)
    opt = opt_dp(seq, standard)
    labs = classify_patterns(tr, opt)
    for a, b in zip(labs, labs[1:]):
        assert a.interval.hi <= b.interval.lo
    covered = sorted(set(tr.schedule) | set(opt.schedule))
    assert sum(len(lab.pfsum_cards) + len(lab.opt_cards) for lab in labs) == len(tr.schedule) + len(opt.schedule)
    assert labs[0].interval.lo == covered[0]
    assert all(lab.pfsum_cost == lab.opt_cost for lab in labs if lab.kind == "I")
    assert sum(lab.opt_cost for lab in labs) <= opt.total_cost
    assert Fraction(sum(lab.pfsum_cost for lab in labs)) <= tr.total
