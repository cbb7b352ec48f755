from dataclasses import replace
from fractions import Fraction

from bahnlab.algos import AlgorithmSpec, run_online
from bahnlab.analysis import TightInstanceSpec, check_lemmas, run_tight, tight_instance
from bahnlab.analysis.lemmas import OFF_PHASE_CEILING, ON_PHASE_FLOOR, STRADDLE_CEILING
from bahnlab.core import RequestSequence, epoch_decomposition
from bahnlab.predictors import PerfectPredictor, SyntheticPredictor


def _trace(pairs, config, predictor=None):
    seq = RequestSequence(pairs)
    return run_online(AlgorithmSpec("PFSUM"), seq, predictor or PerfectPredictor(seq), config)


def test_clean_run_has_no_violations(standard):
    pairs = [(t, 30 + (17 * t) % 45) for t in range(200)]
    assert check_lemmas(_trace(pairs, standard)) == []


def test_edited_on_phase_is_flagged(small):
    tr = _trace([(0, 1), (1, 1)], small)
    assert tr.schedule == ()
    bad = replace(tr, schedule=(0,))
    (v,) = [v for v in check_lemmas(bad) if v.lemma == ON_PHASE_FLOOR]
    assert v.sums["cost"] == 2 and "[0, 5)" in str(v)


def test_off_phase_ceiling_flagged_for_fabricated_trace(small):
    # 45 >= 2 gamma inside an off phase cannot happen in a real PFSUM run
    tr = _trace([(0, 15), (1, 15), (2, 15)], small, SyntheticPredictor(RequestSequence(), 0))
    bad = replace(tr, schedule=(), prediction_log=type(tr.prediction_log)())
    # with no on phase around, the straddle check sees the same 45 and fires too
    assert {v.lemma for v in check_lemmas(bad)} == {OFF_PHASE_CEILING, STRADDLE_CEILING}


def test_straddle_flagged_for_fabricated_trace(small):
    # pretend PFSUM bought at 0 and 10; [4, 9) then holds 20 + 15 + 15 > 2 gamma
    pairs = [(0, 1), (4, 20), (6, 15), (8, 15), (10, 20)]
    tr = _trace(pairs, small)
    bad = replace(tr, schedule=(0, 10), prediction_log=type(tr.prediction_log)())
    found = check_lemmas(bad)
    assert {v.lemma for v in found} == {STRADDLE_CEILING}
    assert found[0].sums == {"s2": 20, "s3": 30, "s4": 0}


def test_tight_traces_sit_on_the_floor(standard):
    g = Fraction(standard.gamma)
    for eta in (0, g / 4, g / 2):
        run = run_tight(tight_instance(TightInstanceSpec("P_IV", standard, eta)))
        assert check_lemmas(run.trace) == []
        on = epoch_decomposition(run.trace.schedule, standard, 100).epochs[1].on_phase
        # the on phase holds exactly gamma - eta
        assert run.trace.sequence.cost(on) == g - eta


def test_noisy_run_respects_lemmas(standard):
    pairs = [(t, 20 + (31 * t) % 70) for t in range(150)]
    seq = RequestSequence(pairs)
    for bias in (-300, -50, 0, 40, 900):
        tr = run_online(AlgorithmSpec("PFSUM"), seq, SyntheticPredictor(seq, Fraction(bias)), standard)
        assert check_lemmas(tr) == []
