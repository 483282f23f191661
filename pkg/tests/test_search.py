import json
import math
from fractions import Fraction

import numpy as np
import pytest

from smalltri.objectives import evaluate
from smalltri.search import (MAX_MIN, MIN_COUNT, SearchParams, brute_force_cost, lattice_brute_force,
                             maximize_min_area, minimize_small_count, random_falsification)

QUICK = dict(restarts=4, max_iters=150)


def test_params_validation():
    with pytest.raises(ValueError):
        SearchParams(objective="nope")
    with pytest.raises(ValueError):
        SearchParams(n=2)
    with pytest.raises(ValueError):
        SearchParams(objective=MIN_COUNT)
    with pytest.raises(ValueError):
        SearchParams(cooling=1.0)


def test_max_min_quick_run_is_consistent():
    res = maximize_min_area(SearchParams(seed=3, **QUICK))
    assert 1 / 6 - 1e-3 <= res.best_value <= 6 / 25 + 1e-9
    assert res.best_value == pytest.approx(float(evaluate(res.best_config).min_area), abs=0)
    assert len(res.per_restart) == 4
    doc = json.loads(res.to_json())
    assert doc["schema_version"] == 1 and doc["objective"] == MAX_MIN


def test_same_seed_same_result():
    a = maximize_min_area(SearchParams(seed=11, **QUICK))
    b = maximize_min_area(SearchParams(seed=11, **QUICK))
    assert a.to_json() == b.to_json()
    c = maximize_min_area(SearchParams(seed=12, **QUICK))
    assert c.per_restart[-1] != a.per_restart[-1]


def test_other_n():
    res = maximize_min_area(SearchParams(n=6, seed=0, **QUICK))
    assert 0 < res.best_value < 1 / 6
    assert res.best_config.n == 6


def test_min_count_finds_three():
    res = minimize_small_count(SearchParams(seed=0, **QUICK), sigma=0.25 + 1e-9)
    assert res.best_value == 3
    assert res.objective == MIN_COUNT


def test_lattice_oracle_k6():
    res = lattice_brute_force(6, 5)
    assert res.exact_value == Fraction(1, 6)
    assert evaluate(res.best_config).min_area == Fraction(1, 6)
    assert res.evaluations == math.comb(28, 5) * 10


def test_lattice_oracle_small_cases():
    # three points: the vertices; four points on the order-2 lattice: best is 1/4
    assert lattice_brute_force(2, 3).exact_value == 1
    assert lattice_brute_force(2, 4).exact_value == Fraction(1, 4)
    cnt = lattice_brute_force(6, 5, MIN_COUNT, sigma=0.25)
    assert cnt.exact_value == 3


def test_lattice_budget():
    assert brute_force_cost(6, 5) == 98_280 * 10
    with pytest.raises(ValueError):
        lattice_brute_force(30, 8)


def test_random_falsification():
    rep = random_falsification(20_000, 5, 0.24, seed=5)
    assert rep.violations == 0
    assert rep.max_min_area < 0.24
    assert rep.min_small_count >= 1
    assert evaluate(rep.worst).min_area == pytest.approx(rep.max_min_area)


def test_random_falsification_catches_a_low_threshold():
    # with sigma below typical min areas, violations must show up
    rep = random_falsification(5_000, 5, 0.001, seed=5)
    assert rep.violations > 0
