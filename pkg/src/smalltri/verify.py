"""Aggregate property suites behind the ``verify`` command.

Each suite returns a list of :class:`~smalltri.cases.Check`; a suite fails
when any of its checks does.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import cases, lemma_lab
from .cases import Check
from .geometry import (SIDE, bary_to_cart_array, cart_to_bary, shoelace_area, strip_width,
                       triple_areas, uniform_bary)
from .objectives import (QUARTER, SIX_25, clustered_construction, clustered_fraction_exact,
                         evaluate, fig13_construction)
from .partition import ParallelogramSpec, build_grid, make_hexagon, make_parallelogram, make_triangle
from .search import lattice_brute_force, random_falsification

SUITES = ("geometry", "lemma", "partition", "cases", "objectives", "search")


def geometry_suite(trials: int, seed: int) -> list:
    rng = np.random.default_rng([seed, 0])
    m = min(trials, 100_000)
    p = uniform_bary(rng, (m, 3))
    cart = bary_to_cart_array(p)
    back = np.array([cart_to_bary(c) for c in cart[: min(m, 2000), 0]])
    rt = float(np.abs(back - p[: len(back), 0]).max())
    det = triple_areas(p, np.array([[0, 1, 2]]))[:, 0]
    sl = np.array([shoelace_area(*c) for c in cart[: min(m, 2000)]])
    dd = float(np.abs(det[: len(sl)] - sl).max())
    w = strip_width(0.4 * SIDE, 0.24)
    return [
        Check("bary/cart round trip", rt <= 1e-12, f"max error {rt:.3g}"),
        Check("determinant = shoelace", dd <= 1e-12, f"max difference {dd:.3g}"),
        Check("areas in [0, 1]", bool((det >= 0).all() and (det <= 1 + 1e-12).all()), f"{m} triples"),
        Check("strip width 3*sqrt(3)/5 L", abs(w - 3 * math.sqrt(3) / 5 * SIDE) <= 1e-12, repr(w)),
    ]


def lemma_suite(trials: int, seed: int) -> list:
    scan = lemma_lab.scan_lemma(1e-5)
    x, f = lemma_lab.cot_sum_min()
    mono = lemma_lab.strip_monotonicity_check(trials, seed)
    halv = lemma_lab.parallelogram_halving_test(trials, seed)
    return [
        Check("region area below 0.24 on the scan", scan.passed,
              f"max {scan.max_region_area:.6f} at A={scan.argmax_angle:.5f}"),
        Check("cotangent sum minimum", abs(x - math.pi / 3) <= 1e-9 and abs(f - 2 / math.sqrt(3)) <= 1e-9,
              f"({x!r}, {f!r})"),
        Check("strip monotonicity", mono.passed, f"{mono.violations}/{mono.trials} violations"),
        Check("parallelogram halving", halv.passed and 0.499 < halv.max_ratio <= 0.5 + 1e-12,
              f"{halv.violations}/{halv.trials} violations, max ratio {halv.max_ratio!r}"),
    ]


def partition_suite(trials: int, seed: int) -> list:
    grid = build_grid(10)
    dev = max(abs(c.area - 0.01) for c in grid)
    par = [make_parallelogram(ParallelogramSpec(a, b, (10, 0, 0), 0)).area for a, b in ((3, 8), (4, 6))]
    diams = [make_hexagon((6, 2, 2)).diam, make_triangle((6, 0, 0), 4).diam]
    return [
        Check("100 grid cells of area 1/100", len(grid) == 100 and dev <= 1e-12,
              f"{len(grid)} cells, max deviation {dev:.3g}"),
        Check("(3,8) and (4,6) parallelograms have area 48/100",
              all(abs(a - 0.48) <= 1e-12 for a in par), repr(par)),
        Check("hexagon and side-4 triangle have diameter 4L/10",
              all(abs(d - 0.4 * SIDE) <= 1e-12 for d in diams), repr(diams)),
    ]


def cases_suite(trials: int, seed: int) -> list:
    out = []
    for rep in cases.check_all(seed=seed):
        for c in rep.checks:
            out.append(Check(f"{rep.case}: {c.name}", c.passed, c.detail))
    return out


def objectives_suite(trials: int, seed: int) -> list:
    rep = evaluate(fig13_construction())
    named = [rep.area_of(*t) for t in ((0, 1, 2), (0, 3, 4), (1, 2, 3), (2, 3, 4))]
    cl = evaluate(clustered_construction(3, 0.0), thresholds=(QUARTER,))
    frac = Fraction(cl.count_at_most[QUARTER], len(cl.areas))
    return [
        Check("fig13 min area is exactly 1/6", rep.min_area == Fraction(1, 6), str(rep.min_area)),
        Check("fig13 abc, ade, bcd, cde are 1/6", all(a == Fraction(1, 6) for a in named),
              ", ".join(map(str, named))),
        Check("fig13 has 7 triangles of area <= 1/4", rep.count_at_most[QUARTER] == 7,
              str(rep.count_at_most[QUARTER])),
        Check("cluster fraction k=3 is 112/220", frac == Fraction(112, 220) == clustered_fraction_exact(3),
              str(frac)),
        Check("cluster fraction tends to 5/8", abs(clustered_fraction_exact(500) - Fraction(5, 8)) < 7e-4,
              str(float(clustered_fraction_exact(500)))),
    ]


def search_suite(trials: int, seed: int) -> list:
    fal = random_falsification(trials, 5, float(SIX_25), seed)
    quarter = random_falsification(trials, 5, 0.25 + 1e-9, seed)
    lat = lattice_brute_force(6, 5)
    return [
        Check("random configurations have a triangle of area <= 6/25", fal.violations == 0,
              f"{fal.violations}/{trials}, largest min area {fal.max_min_area:.6f}"),
        Check("random configurations have >= 3 triangles of area <= 1/4", quarter.min_small_count >= 3,
              f"fewest {quarter.min_small_count}"),
        Check("k=6 lattice max-min area is 1/6", lat.exact_value == Fraction(1, 6), str(lat.exact_value)),
    ]


_SUITE_FUNCS = {
    "geometry": geometry_suite, "lemma": lemma_suite, "partition": partition_suite,
    "cases": cases_suite, "objectives": objectives_suite, "search": search_suite,
}


def run_suite(name: str, trials: int = 100_000, seed: int = 0) -> dict:
    """Run one suite, or every suite for ``name == "all"``; returns ``{suite: [Check, ...]}``."""
    if trials < 1:
        raise ValueError("trials must be positive")
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n not in _SUITE_FUNCS:
            raise ValueError(f"unknown suite {n!r}")
    return {n: _SUITE_FUNCS[n](trials, seed) for n in names}
