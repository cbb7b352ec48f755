import random
from fractions import Fraction

import pytest

from bahnlab.core import BahncardConfig, RequestSequence, lemma1_violations
from bahnlab.errors import TooLarge
from bahnlab.offline import opt_bruteforce, opt_dp

from oracles import naive_opt


def test_empty(small):
    sol = opt_dp(RequestSequence(), small)
    assert sol.total_cost == 0 and sol.schedule == ()
    assert opt_bruteforce(RequestSequence(), small) == 0


def test_single_request(small):
    seq = RequestSequence([(0, 30)])
    sol = opt_dp(seq, small)
    assert sol.total_cost == 25 and sol.schedule == (0,)
    assert opt_bruteforce(seq, small) == 25


def test_three_requests(small):
    seq = RequestSequence([(0, 8), (1, 8), (2, 8)])
    sol = opt_dp(seq, small)
    assert sol.total_cost == 22 and sol.schedule == (0,)
    assert sol.per_request_cost == (4, 4, 4)
    assert opt_bruteforce(seq, small) == 22


def test_ties_prefer_fewer_cards_then_earlier(small):
    # buying (10 + 10) ties paying 20 outright
    assert opt_dp(RequestSequence([(0, 20)]), small).schedule == ()
    # one card either at 0 or at 1 covers everything at the same cost
    sol = opt_dp(RequestSequence([(0, 30), (1, 0)]), small)
    assert sol.schedule == (0,)


def test_bruteforce_limit(small):
    seq = RequestSequence([(t, 1) for t in range(16)])
    with pytest.raises(TooLarge):
        opt_bruteforce(seq, small)


def _random_instance(rng, n):
    times = sorted(rng.sample(range(0, 4 * n + 4), n))
    return RequestSequence([(t, Fraction(rng.randrange(0, 4000), 100)) for t in times])


def test_three_routes_agree():
    rng = random.Random(11)
    for _ in range(10):
        config = BahncardConfig(rng.choice([10, 40, 100]), rng.choice(["0", "0.2", "0.5", "0.8"]), rng.choice([3, 5, 10]))
        seq = _random_instance(rng, rng.randrange(0, 9))
        dp = opt_dp(seq, config).total_cost
        assert dp == opt_bruteforce(seq, config) == naive_opt(list(seq), config.C, config.beta, config.T)


def test_opt_schedule_has_no_idle_expensive_window():
    rng = random.Random(3)
    config = BahncardConfig(100, "0.8", 10)
    for _ in range(20):
        seq = _random_instance(rng, 40)
        sol = opt_dp(seq, config)
        assert lemma1_violations(seq, sol.schedule, config) == []


def test_solution_to_dict(small):
    d = opt_dp(RequestSequence([(0, 8), (1, 8), (2, 8)]), small).to_dict()
    assert d == {"total_cost": "22", "schedule": ["0"], "per_request_cost": ["4", "4", "4"]}
