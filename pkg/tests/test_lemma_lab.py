import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smalltri.lemma_lab import (PI3, abc_of_angle, angle_floor, c_upper, compare_strips, contraction_chain,
                                cot_sum, cot_sum_min, parallelogram_halving_test, region_area,
                                region_area_geometric, region_area_montecarlo, scan_lemma,
                                strip_monotonicity_check)
from smalltri.geometry import SIDE


def test_endpoints():
    a, b, c = abc_of_angle(0.0)
    assert (a, b, c) == pytest.approx((0.0, 0.6, 0.4), abs=1e-15)
    assert region_area(0.0) == pytest.approx(0.16, abs=1e-15)
    assert region_area(PI3) == 0.0


@settings(max_examples=200, deadline=None)
@given(st.floats(0, PI3))
def test_sides_sum_to_one(A):
    assert sum(abc_of_angle(A)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("A", [0.0, 0.1, 0.12814, 0.5, 0.9, 1.0])
def test_closed_form_matches_construction(A):
    assert region_area(A) == pytest.approx(region_area_geometric(A), abs=1e-12)


@pytest.mark.parametrize("A", [0.0, 0.4])
def test_closed_form_matches_sampling(A):
    assert region_area(A) == pytest.approx(region_area_montecarlo(A, 400_000, seed=1), abs=3e-3)


def test_angle_range_enforced():
    with pytest.raises(ValueError):
        abc_of_angle(-0.1)
    with pytest.raises(ValueError):
        region_area(PI3 + 0.01)


def test_scan():
    rep = scan_lemma(1e-5)
    assert rep.passed
    assert rep.max_region_area < 0.24
    assert rep.max_abc_residual <= 1e-12
    assert rep.max_sin_cos_residual <= 1e-12
    assert len(rep.angles) == math.ceil(PI3 / 1e-5)
    # the area first rises above its value at A = 0 before falling to 0
    assert rep.max_region_area > 0.16 and rep.argmax_angle > 0.1
    header, first = rep.to_csv().splitlines()[:2]
    assert header == "A,a,b,c,region_area"
    doc = json.loads(rep.to_json())
    assert doc["schema_version"] == 1 and doc["passed"]


@pytest.mark.parametrize("step", [0, -1e-5, 1e-2])
def test_scan_step_validated(step):
    with pytest.raises(ValueError):
        scan_lemma(step)


def test_contraction_chain():
    cps = {cp.name: cp for cp in contraction_chain()}
    assert all(cp.holds for cp in cps.values())
    assert math.sin(PI3 - cps["A_floor_1"].value) == pytest.approx(2 / 3, abs=1e-12)
    assert cps["A_floor_1"].value == pytest.approx(0.317, abs=1e-3)
    assert c_upper(0.317) == pytest.approx(0.337, abs=1e-3)
    assert angle_floor(0.474) == pytest.approx(0.553, abs=1e-3)


def test_c_upper_dominates_c():
    A = np.linspace(0, PI3, 1001)
    assert (c_upper(A) >= abc_of_angle(A)[2] - 1e-15).all()


def test_cot_sum_minimum():
    x, f = cot_sum_min()
    assert x == pytest.approx(math.pi / 3, abs=1e-9)
    assert f == pytest.approx(2 / math.sqrt(3), abs=1e-9)
    grid = np.linspace(0.01, 2 * PI3 - 0.01, 10001)
    assert cot_sum(grid).min() >= f - 1e-12


def test_strip_comparison():
    cmp_ = compare_strips(0.2 * SIDE, 0.5)
    assert cmp_.holds
    assert cmp_.w > cmp_.w_prime


def test_strip_monotonicity():
    rep = strip_monotonicity_check(20_000, seed=3)
    assert rep.passed


def test_halving_attains_bound():
    rep = parallelogram_halving_test(20_000, seed=3)
    assert rep.passed
    assert 0.499 < rep.max_ratio <= 0.5 + 1e-12


def test_halving_without_snapping_stays_below():
    rep = parallelogram_halving_test(5_000, seed=3, snap=0.0)
    assert rep.passed and rep.max_ratio < 0.5
