from fractions import Fraction

import pytest

from bahnlab.core import Interval, RequestSequence
from bahnlab.errors import NonDayGranular
from bahnlab.predictors import (
    DerivedPredictor,
    PerturbationParams,
    PredictionLog,
    PredictionQuery,
    ScheduledPredictor,
    derived_predict,
    measure_eta,
    perfect_predict,
    perturb_instance,
    synthetic_predict,
)
from bahnlab.sampling import PriceDistribution

SEQ = RequestSequence([(1, 5), (2, 7)])


@pytest.mark.parametrize("t, T, expected", [(1, 1, 5), (1, 2, 12), (0, 1, 0), (2, 5, 7)])
def test_perfect_predict(t, T, expected):
    assert perfect_predict(SEQ, t, T) == expected


def test_perfect_predict_empty():
    assert perfect_predict(RequestSequence(), 3, 10) == 0


def test_derived_predict():
    true = RequestSequence([(1, 10)])
    perturbed = RequestSequence([(1, 16)])
    assert derived_predict(perturbed, 1, 5) == 16
    assert derived_predict(perturbed, 1, 5) - perfect_predict(true, 1, 5) == 6
    assert derived_predict(RequestSequence(), 4, 5) == 0
    assert derived_predict(SEQ, 1, 2) == perfect_predict(SEQ, 1, 2)


def test_synthetic_predict():
    assert synthetic_predict(SEQ, 1, 2, 0) == perfect_predict(SEQ, 1, 2)
    assert synthetic_predict(RequestSequence([(0, 5)]), 0, 1, -9) == 0
    twenty = RequestSequence([(0, 20)])
    eta = Fraction(7, 3)
    log = PredictionLog()
    for t in range(3):
        w = Interval.closed_open(t, t + 1)
        log.append(PredictionQuery(t, w, synthetic_predict(twenty, t, 1, eta), perfect_predict(twenty, t, 1)))
    assert log.queries[0].predicted == 20 + eta
    assert measure_eta(log) == eta


def _q(t, guess, truth):
    return PredictionQuery(t, Interval.closed_open(t, t + 1), guess, truth)


def test_measure_eta():
    assert measure_eta(PredictionLog()) == 0
    assert measure_eta([_q(0, 25, 20)]) == 5
    assert measure_eta([_q(0, 3, 0), _q(1, 0, 7)]) == 7


def test_log_rejects_time_travel():
    log = PredictionLog()
    log.append(_q(2, 0, 0))
    with pytest.raises(ValueError):
        log.append(_q(1, 0, 0))


def test_scheduled_predictor_falls_back_to_truth():
    pred = ScheduledPredictor(SEQ, {1: 100})
    assert pred.predict(Interval.closed_open(1, 3)) == 100
    assert pred.predict(Interval.closed_open(2, 3)) == 7
    assert DerivedPredictor(SEQ).predict(Interval.closed_open(0, 9)) == 12


def test_perturb_p0_is_identity():
    for seed in range(5):
        assert perturb_instance(SEQ, PerturbationParams(0, seed=seed)) == SEQ


def test_perturb_p1_fresh_price_every_day():
    seq = RequestSequence([(0, 10), (2, 20), (3, 1000)])
    out = perturb_instance(seq, PerturbationParams(1, PriceDistribution("uniform"), seed=3), range(6))
    assert out.times == (0, 1, 2, 3, 4, 5)
    # a single fresh Uniform[25, 75] sample each day
    assert all(25 <= p <= 75 for p in out.prices)


def test_perturb_golden_single_day():
    # Removal coin, then noise coin, both drawn from one seeded stream.
    seq = RequestSequence([(3, 50)])
    out = perturb_instance(seq, PerturbationParams(Fraction(1, 2), seed=42), day_grid=[3])
    assert out == RequestSequence([(3, 50)])
    out = perturb_instance(seq, PerturbationParams(Fraction(1, 2), seed=42))
    assert out == RequestSequence([(3, Fraction(6415, 100))])


def test_perturb_golden_normal_noise():
    seq = RequestSequence([(0, 10), (2, 20)])
    out = perturb_instance(seq, PerturbationParams(1, PriceDistribution("normal"), 7))
    assert out == RequestSequence([(0, Fraction(4761, 100)), (1, Fraction(5132, 100)), (2, Fraction(5066, 100))])


def test_perturb_requires_integer_days():
    with pytest.raises(NonDayGranular):
        perturb_instance(RequestSequence([(Fraction(1, 2), 1)]), PerturbationParams(Fraction(1, 2)))


def test_perturb_params_validation():
    with pytest.raises(ValueError):
        PerturbationParams(2)
    with pytest.raises(ValueError):
        PerturbationParams(0, order="sideways")
