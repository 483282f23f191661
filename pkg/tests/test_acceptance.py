"""The fourteen acceptance criteria, each at its stated tolerance.

Every criterion prints one ``[PASS]`` or ``[FAIL]`` line; the lines are
also repeated in the terminal summary (see ``conftest.py``).
"""

import functools
import math
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from smalltri import cases
from smalltri.geometry import SIDE, strip_width
from smalltri.lemma_lab import PI3, contraction_chain, cot_sum_min, parallelogram_halving_test, scan_lemma
from smalltri.objectives import (FIG13_LABELS, clustered_construction, clustered_fraction_exact, evaluate,
                                 fig13_construction)
from smalltri.partition import ParallelogramSpec, build_grid, make_hexagon, make_parallelogram, make_triangle
from smalltri.render import render_svg
from smalltri.search import (MIN_COUNT, SearchParams, lattice_brute_force, maximize_min_area,
                             minimize_small_count, random_falsification)

RESULTS = {}
GOLDEN = Path(__file__).parent / "golden" / "fig13.svg"


def criterion(number, title):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                line = f"[FAIL] criterion {number:2d}: {title} ({type(exc).__name__}: {exc})"
                RESULTS[number] = line
                print(line)
                raise
            line = f"[PASS] criterion {number:2d}: {title} ({detail}; {time.perf_counter() - t0:.1f}s)"
            RESULTS[number] = line
            print(line)
        return wrapper
    return deco


@criterion(1, "corner-region scan stays below 24/100")
def test_c01_lemma_scan():
    t0 = time.perf_counter()
    rep = scan_lemma(1e-5)
    elapsed = time.perf_counter() - t0
    assert rep.angles[0] == 0.0 and rep.angles[-1] < PI3
    assert rep.max_region_area < 0.24
    assert rep.max_abc_residual <= 1e-12
    assert elapsed < 5.0
    return f"max {rep.max_region_area:.6f}, residual {rep.max_abc_residual:.1e}"


@criterion(2, "contraction-chain checkpoints")
def test_c02_contraction_chain():
    cps = {cp.name: cp for cp in contraction_chain()}
    assert cps["A_floor_1"].value > 0.317
    assert cps["A_floor_1"].value == pytest.approx(0.317, abs=1e-3)
    assert cps["c_upper(0.317)"].value < 0.337
    assert cps["c_upper(0.317)"].value == pytest.approx(0.337, abs=1e-3)
    assert cps["c_upper(0.553)"].value < 0.24
    assert all(cp.holds for cp in cps.values())
    return ", ".join(f"{k}={cp.value:.5f}" for k, cp in cps.items())


@criterion(3, "cotangent-sum minimum")
def test_c03_cot_sum():
    x, f = cot_sum_min()
    assert abs(x - math.pi / 3) <= 1e-9
    assert abs(f - 2 / math.sqrt(3)) <= 1e-9
    return f"x-pi/3={x - math.pi / 3:.1e}, f-2/sqrt3={f - 2 / math.sqrt(3):.1e}"


@criterion(4, "strip width for the 4L/10 base")
def test_c04_strip_width():
    w = strip_width(0.4 * SIDE, 0.24)
    assert abs(w - 3 * math.sqrt(3) / 5 * SIDE) <= 1e-12
    return f"w={w!r}"


@criterion(5, "grid, parallelogram areas and close-shape diameters")
def test_c05_grid():
    grid = build_grid(10)
    assert len(grid) == 100
    for c in grid:
        exact = abs(np.linalg.det(np.array(c.nodes, float))) / 10 ** 3
        assert abs(exact - 0.01) <= 1e-12
    for a, b in ((3, 8), (4, 6)):
        assert abs(make_parallelogram(ParallelogramSpec(a, b, (10, 0, 0), 0)).area - 0.48) <= 1e-12
    shapes = [make_hexagon((4, 3, 3)), make_triangle((6, 0, 0), 4), make_triangle((5, 5, 4), 4, up=False)]
    for s in shapes:
        assert abs(s.diam - 0.4 * SIDE) <= 1e-12
    return "100 cells, areas 48/100, diameters 4L/10"


@criterion(6, "five-point construction with smallest area 1/6")
def test_c06_fig13():
    rep = evaluate(fig13_construction())
    assert rep.min_area == Fraction(1, 6)
    for t in ((0, 1, 2), (0, 3, 4), (1, 2, 3), (2, 3, 4)):
        assert rep.area_of(*t) == Fraction(1, 6)
    assert len(rep.areas) == 10
    assert sum(a <= Fraction(1, 4) for a in rep.areas) == 7 == rep.count_at_most[Fraction(1, 4)]
    return "min 1/6 exact, 7 triangles <= 1/4"


@criterion(7, "exhaustive k=6 lattice search")
def test_c07_lattice():
    t0 = time.perf_counter()
    res = lattice_brute_force(6, 5)
    elapsed = time.perf_counter() - t0
    assert math.comb(28, 5) == 98_280
    assert res.evaluations == 98_280 * 10
    assert res.exact_value == Fraction(1, 6)
    assert elapsed < 60
    return f"max-min {res.exact_value} over 98280 subsets"


@criterion(8, "max-min search range and bit-identical rerun")
def test_c08_search():
    params = SearchParams(n=5, restarts=100, seed=7)
    a = maximize_min_area(params)
    b = maximize_min_area(params)
    assert 1 / 6 - 1e-3 <= a.best_value <= 6 / 25 + 1e-9
    assert a.to_json() == b.to_json()
    return f"best {a.best_value:.6f}"


@criterion(9, "random falsification at 6/25")
def test_c09_falsification():
    t0 = time.perf_counter()
    rep = random_falsification(100_000, 5, 6 / 25, seed=9)
    elapsed = time.perf_counter() - t0
    assert rep.violations == 0
    assert rep.max_min_area <= 0.25
    assert elapsed < 30
    return f"0 violations, largest min area {rep.max_min_area:.6f}"


@criterion(10, "fewest triangles of area <= 1/4 among five points")
def test_c10_small_count():
    sigma = 0.25 + 1e-9
    res = minimize_small_count(SearchParams(n=5, objective=MIN_COUNT, sigma=sigma, seed=10))
    assert res.best_value == 3
    searched = [r["value"] for r in res.per_restart]
    rnd = random_falsification(100_000, 5, sigma, seed=10)
    observed = min(min(searched), rnd.min_small_count)
    assert observed >= 1
    assert observed >= 3
    return f"search found 3; fewest over 1e5 random {rnd.min_small_count}, over restarts {min(searched)}"


@criterion(11, "four-cluster construction fractions")
def test_c11_clusters():
    brute = evaluate(clustered_construction(3, 0.0), thresholds=(Fraction(1, 4),))
    frac = Fraction(brute.count_at_most[Fraction(1, 4)], len(brute.areas))
    assert frac == Fraction(112, 220) == clustered_fraction_exact(3)
    jitter = evaluate(clustered_construction(3, 0.005, seed=11), thresholds=(0.25,))
    assert Fraction(jitter.count_at_most[0.25], 220) == Fraction(112, 220)
    gap = abs(clustered_fraction_exact(500) - Fraction(5, 8))
    assert gap < 7e-4
    return f"k=3 fraction {frac}, k=500 gap {float(gap):.2e}"


@criterion(12, "parallelogram halving")
def test_c12_halving():
    rep = parallelogram_halving_test(100_000, seed=12)
    assert rep.violations == 0
    assert 0.499 < rep.max_ratio <= 0.5 + 1e-12
    return f"max ratio {rep.max_ratio!r}"


@criterion(13, "Case I-III coverage checks with the (3,9)/(3,8) report")
def test_c13_cases():
    reports = cases.check_all()
    failed = [f"{r.case}: {c.name}" for r in reports for c in r.checks if not c.passed]
    assert not failed, failed
    note = next(n for r in reports for n in r.notes if "(3,9)" in n)
    assert "(3,8)" in note
    return f"{sum(len(r.checks) for r in reports)} checks; {note}"


@criterion(14, "rendering matches the golden file")
def test_c14_render():
    svg = render_svg(fig13_construction(), grid=10, labels=FIG13_LABELS)
    assert svg.encode() == GOLDEN.read_bytes()
    return f"{len(svg)} bytes"
