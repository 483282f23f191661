"""Machine checks of the three-case covering argument on the 100-cell grid.

The regions each case relies on are read from the region files shipped in
``smalltri/data``; this module only checks what the argument needs them to
satisfy (coverage, diameters, containment in admissible parallelograms).
Throughout, ``p1 .. p5`` are the five points and a set "of diameter 4L/10"
can hold at most one of them without forcing a small triangle.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional, Sequence

import numpy as np

from .geometry import L
from .partition import (MIRROR, ROTATE, ParallelogramSpec, RegionSpec, build_grid, cell_region,
                        coverage_check, lattice_nodes, lattice_region, make_hexagon,
                        make_parallelogram, make_triangle, parse_regions, permute_region,
                        region_inside, whole_triangle)

K = 10
CLOSE = 0.4 * L
DIAM_TOL = 1e-12
ADMISSIBLE = ((2, 10), (3, 8), (4, 6))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CaseReport:
    case: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> Check:
        c = Check(name, bool(passed), detail)
        self.checks.append(c)
        return c

    def to_dict(self) -> dict:
        return {"case": self.case, "passed": self.passed,
                "checks": [asdict(c) for c in self.checks], "notes": list(self.notes)}


def load_case(name: str) -> dict:
    text = resources.files("smalltri").joinpath("data", f"{name}.regions").read_text()
    return parse_regions(text)


# -- building blocks -------------------------------------------------------------

@lru_cache(maxsize=None)
def close_shapes(k: int = K) -> tuple:
    """Every lattice hexagon of side 2 and triangle of side 4 in T (all of diameter 4L/10)."""
    out = []
    for n in lattice_nodes(k):
        if min(n) >= 2:
            out.append(make_hexagon(n, k))
    for a in range(k - 3):
        for b in range(k - 3 - a):
            out.append(make_triangle((a, b, k - 4 - a - b), 4, True, k))
    for a in range(k + 5):
        for b in range(k + 5 - a):
            c = k + 4 - a - b
            if max(a, b, c) <= k:
                try:
                    out.append(make_triangle((a, b, c), 4, False, k))
                except ValueError:
                    pass
    return tuple(out)


@lru_cache(maxsize=None)
def parallelograms(sizes: tuple = ADMISSIBLE, k: int = K) -> tuple:
    """All lattice parallelograms of the given side pairs, either way round, meeting T."""
    out = []
    for a, b in sizes:
        for sa, sb in sorted({(a, b), (b, a)}):
            for d in range(3):
                for x in range(-k - 2, k + 3):
                    for y in range(-k - 2, k + 3):
                        anc = [0, 0, 0]
                        anc[(d + 1) % 3], anc[(d + 2) % 3], anc[d] = x, y, k - x - y
                        spec = ParallelogramSpec(sa, sb, tuple(anc), d, k)
                        try:
                            out.append((spec, make_parallelogram(spec)))
                        except ValueError:
                            pass
    return tuple(out)


def lemma23_cover(anchor: RegionSpec) -> list:
    """Close shapes (diameter 4L/10) that contain all of ``anchor``."""
    return [s for s in close_shapes(anchor.k) if region_inside(anchor, s)]


def union_cells(regions: Iterable[RegionSpec]) -> frozenset:
    return frozenset().union(*[r.cells for r in regions])


def _names(cells) -> str:
    return " ".join(f"({c.row},{c.index})" for c in sorted(cells))


def _diam_check(report: CaseReport, region: RegionSpec):
    report.add(f"diam({region.name}) <= 4L/10", region.diam <= CLOSE + DIAM_TOL,
               f"diam = {region.diam / L:.12f} L")


def _covers(report: CaseReport, name: str, regions: Sequence[RegionSpec], target: RegionSpec,
            samples: int, seed: int):
    cov = coverage_check(regions, target, samples=samples, seed=seed)
    detail = f"{cov.samples} samples, {cov.misses} misses"
    if cov.worst_miss is not None:
        detail += f", worst miss {tuple(round(w, 6) for w in cov.worst_miss)}"
    report.add(name, cov.covered, detail)


def excluded_by_parallelogram(cell_region_: RegionSpec, fixed: Sequence[RegionSpec],
                              sizes=ADMISSIBLE):
    """A parallelogram holding ``cell_region_`` and two of the ``fixed`` regions, if any."""
    for spec, par in parallelograms(tuple(sizes), cell_region_.k):
        if not region_inside(cell_region_, par):
            continue
        inside = [f for f in fixed if region_inside(f, par)]
        if len(inside) >= 2:
            return spec, [f.name for f in inside]
    return None


# -- Case I -------------------------------------------------------------------------

def check_case_one(samples: int = 20000, seed: int = 0) -> CaseReport:
    """One point in the central triangle.

    Nobody else may be within 4L/10 of it, so the other four points sit in
    the three corner triangles and two of them share one.
    """
    R = load_case("case1")
    rep = CaseReport("I")
    central, wide = R["central"], R["wide"]
    corners = [R["corner_top"], R["corner_left"], R["corner_right"]]
    T = whole_triangle(K)
    _covers(rep, "wide + corners cover T", [wide, *corners], T, samples, seed)
    rep.add("central inside wide", central.cells <= wide.cells)
    cover = lemma23_cover(central)
    rep.add("close shapes around the central triangle exist", len(cover) > 0,
            f"{len(cover)} hexagons/triangles contain it")
    _covers(rep, "wide covered by close shapes containing central", cover, wide, samples, seed)
    for c in corners:
        _diam_check(rep, c)
    return rep


# -- Case II ------------------------------------------------------------------------

def fig8_variants(R: dict) -> list:
    """Compare the (3,9) and (3,8) parallelograms for confining ``p1`` to its corner cell.

    For each side pair: the parallelograms that hold both the top white
    triangle (``p2``) and the left triangle (``p3``), what they leave of the
    anchor triangle, and whether halving the area stays within 24/100.
    """
    anchor, p2, p3, corner = R["anchor"], R["top_white"], R["p3_left"], R["p1_corner"]
    out = []
    for sizes in ((3, 9), (3, 8)):
        hits = []
        for spec, par in parallelograms((sizes,), K):
            if region_inside(p2, par) and region_inside(p3, par):
                left = frozenset(c for c in anchor.cells if not region_inside(cell_region("_", [c]), par))
                hits.append((spec, left))
        confines = [spec for spec, left in hits if left <= corner.cells]
        area = 2 * sizes[0] * sizes[1] / K ** 2
        gate = area <= 0.48 + 1e-12
        out.append({
            "sides": sizes,
            "area": area,
            "half_area": area / 2,
            "area_gate": gate,
            "confining_placements": [(s.a, s.b, s.anchor, s.direction) for s in confines],
            "closes": gate and bool(confines),
        })
    return out


def check_case_two(samples: int = 20000, seed: int = 0) -> CaseReport:
    """One point ``p1`` in the top triangle of the inner ring (Case I excluded)."""
    R = load_case("case2")
    rep = CaseReport("II")
    anchor, wide, top, lower = R["anchor"], R["wide"], R["top_white"], R["lower_white"]
    bottom, p3, corner, p45 = R["bottom_strips"], R["p3_left"], R["p1_corner"], R["p45"]
    T = whole_triangle(K)

    _covers(rep, "anchor + wide + white regions cover T", [anchor, wide, top, lower], T, samples, seed)
    cover = lemma23_cover(anchor)
    _covers(rep, "wide covered by close shapes containing the anchor", cover, wide, samples, seed)
    _diam_check(rep, top)

    p3_right = permute_region(p3, MIRROR, "p3_right")
    rep.add("lower white = bottom strips + two side triangles",
            lower.cells == bottom.cells | p3.cells | p3_right.cells)
    _diam_check(rep, p3)
    strips = [spec for spec, par in parallelograms(((2, 10),), K) if region_inside(bottom, par)]
    rep.add("bottom strips fit a (2,10) parallelogram", bool(strips),
            f"{len(strips)} placements")

    variants = fig8_variants(R)
    summary = "; ".join(
        f"({v['sides'][0]},{v['sides'][1]}): area {v['area']:.2f}, half {v['half_area']:.2f}, "
        f"gate {'ok' if v['area_gate'] else 'FAILS'}, "
        f"{len(v['confining_placements'])} confining placements, "
        f"{'closes' if v['closes'] else 'does not close'}"
        for v in variants)
    rep.add("p1 confined to its corner cell by an admissible parallelogram",
            any(v["closes"] for v in variants), summary)
    rep.notes.append("(3,9) vs (3,8) for confining p1: " + summary)
    rep.add("corner cell lies in the anchor", corner.cells <= anchor.cells and len(corner.cells) == 1)

    # every lower white cell outside p45 is ruled out for p4 and p5
    fixed = [corner, top, p3]
    unexplained = []
    for c in sorted(lower.cells - p45.cells):
        cr = cell_region(f"cell{c.row},{c.index}", [c])
        if region_inside(cr, p3):
            continue  # would share the small side triangle with p3
        if excluded_by_parallelogram(cr, fixed) is None:
            unexplained.append(c)
    rep.add("cells outside p45 are excluded by admissible parallelograms", not unexplained,
            f"unexplained: {_names(unexplained)}" if unexplained else
            f"{len(lower.cells - p45.cells)} cells excluded")
    rep.add("p45 lies in the lower white region", p45.cells <= lower.cells)

    # p3 at any node of its triangle (corners included), p4 and p5 anywhere in p45
    closing = []
    ok = True
    for node in sorted({n for c in p3.cells for n in c.nodes}):
        pt = np.array([node], float) / K
        found = next((spec for spec, par in parallelograms(ADMISSIBLE, K)
                      if par.violation(pt)[0] <= 1e-9 and region_inside(p45, par)), None)
        ok = ok and found is not None
        closing.append(f"{node}: " + (f"({found.a},{found.b})" if found else "none"))
    rep.add("p3, p4, p5 always fit an admissible parallelogram", ok, ", ".join(closing))
    return rep


# -- Case III ---------------------------------------------------------------------

def trapezoid_pair_covers(R: dict) -> list:
    """One hexagon and two side-4 triangles for each pair of trapezoids."""
    left, right = R["trap_left"], R["trap_right"]
    hexagon = make_hexagon((6, 2, 2), K)
    t1 = make_triangle((2, 4, 0), 4, True, K)
    t2 = make_triangle((2, 0, 4), 4, True, K)
    out = []
    pieces = [hexagon, t1, t2]
    pair = (left, right)
    for turn in range(3):
        out.append((pair, pieces))
        pieces = [permute_region(p, ROTATE) for p in pieces]
        pair = tuple(permute_region(p, ROTATE) for p in pair)
    return out


def check_case_three(samples: int = 20000, seed: int = 0) -> CaseReport:
    """All five points in the outer ring of width 2 rows."""
    R = load_case("case3")
    rep = CaseReport("III")
    inner, outer = R["inner"], R["outer"]
    diamonds = [R["diamond_top"], R["diamond_left"], R["diamond_right"]]
    traps = {"trap_left": R["trap_left"], "trap_right": R["trap_right"], "trap_bottom": R["trap_bottom"]}
    T = whole_triangle(K)

    _covers(rep, "inner + outer cover T", [inner, outer], T, samples, seed)
    pieces = diamonds + list(traps.values())
    disjoint = all(not (a.cells & b.cells) for a, b in itertools.combinations(pieces, 2))
    rep.add("diamonds and trapezoids tile the outer ring",
            disjoint and union_cells(pieces) == outer.cells)
    for d in diamonds:
        _diam_check(rep, d)

    by_cells = {frozenset(t.cells): name for name, t in traps.items()}
    for (a, b), cover in trapezoid_pair_covers(R):
        na, nb = by_cells.get(frozenset(a.cells)), by_cells.get(frozenset(b.cells))
        target = cell_region(f"{na}+{nb}", a.cells | b.cells)
        diam_ok = all(p.diam <= CLOSE + DIAM_TOL for p in cover)
        cov = coverage_check(cover, target, samples=samples, seed=seed)
        rep.add(f"{na} + {nb} covered by a hexagon and two triangles",
                na is not None and nb is not None and diam_ok and cov.covered,
                f"{cov.samples} samples, {cov.misses} misses")

    par_left = make_parallelogram(ParallelogramSpec(8, 3, (K, 0, 0), 0, K), "par38_left")
    par_right = make_parallelogram(ParallelogramSpec(3, 8, (K, 0, 0), 0, K), "par38_right")
    rep.add("left (3,8) parallelogram holds the top diamond and left trapezoid",
            region_inside(R["diamond_top"], par_left) and region_inside(R["trap_left"], par_left))
    rep.add("right (3,8) parallelogram holds the top diamond and right trapezoid",
            region_inside(R["diamond_top"], par_right) and region_inside(R["trap_right"], par_right))
    rest = frozenset(c for c in R["trap_bottom"].cells
                     if not (region_inside(cell_region("_", [c]), par_left)
                             or region_inside(cell_region("_", [c]), par_right)))
    small = R["trap_small"]
    rep.add("what the two parallelograms leave of the bottom trapezoid is trap_small",
            rest == small.cells, f"{len(rest)} cells left")
    _diam_check(rep, small)
    return rep


def check_exhaustive() -> CaseReport:
    """Central triangle, the three inner-ring triangles and the outer ring make up T."""
    c1, c2, c3 = load_case("case1"), load_case("case2"), load_case("case3")
    rep = CaseReport("cases")
    ring = [c2["anchor"], permute_region(c2["anchor"], ROTATE), permute_region(permute_region(c2["anchor"], ROTATE), ROTATE)]
    parts = [c1["central"], *ring, c3["outer"]]
    disjoint = all(not (a.cells & b.cells) for a, b in itertools.combinations(parts, 2))
    rep.add("cases I-III partition T", disjoint and union_cells(parts) == whole_triangle(K).cells)
    rep.add("inner triangle = central + ring", union_cells([c1["central"], *ring]) == c3["inner"].cells)
    return rep


def check_all(samples: int = 20000, seed: int = 0) -> list:
    return [check_case_one(samples, seed), check_case_two(samples, seed),
            check_case_three(samples, seed), check_exhaustive()]
