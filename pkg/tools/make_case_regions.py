"""Write the region files used by the case checks (smalltri/data/case*.regions).

Regions are described here by lattice bounds, i.e. by which grid lines
bound them.  The two regions that the figures only show as shading are
derived: the "wide" region of a case is the union of all hexagons and
triangles of diameter 4L/10 that contain the anchor triangle, and the
region left for p4 and p5 in Case II is what no admissible parallelogram
rules out.  The checks in smalltri.cases re-verify everything from the
files, independently of this script.

    python tools/make_case_regions.py
"""

from pathlib import Path

from smalltri.cases import excluded_by_parallelogram, lemma23_cover, union_cells
from smalltri.partition import (MIRROR, ROTATE, build_grid, cell_region, dump_regions,
                                lattice_region, make_triangle, permute_region, region_inside)

K = 10
DATA = Path(__file__).resolve().parents[1] / "src" / "smalltri" / "data"


def cells(name, bounds):
    return cell_region(name, lattice_region(name, bounds, K).cells, K)


def case1():
    central = cells("central", [(None, 4)] * 3)
    wide = cell_region("wide", union_cells(lemma23_cover(lattice_region("c", [(None, 4)] * 3))))
    return [
        central,
        wide,
        cells("corner_top", [(6, None), None, None]),
        cells("corner_left", [None, (6, None), None]),
        cells("corner_right", [None, None, (6, None)]),
    ]


def case2():
    anchor = make_triangle((4, 2, 2), 2, True, K, "anchor")
    wide = cell_region("wide", union_cells(lemma23_cover(anchor)))
    rest = [c for c in build_grid(K) if c not in wide.cells and c not in anchor.cells]
    top = cell_region("top_white", [c for c in rest if c.row < 5])
    lower = cell_region("lower_white", [c for c in rest if c.row >= 5])
    bottom = cells("bottom_strips", [(0, 2), None, None])
    p3 = cells("p3_left", [(2, None), (6, None), None])
    corner = cells("p1_corner", [(4, None), (2, None), (3, None)])
    fixed = [corner, top, p3]
    p45 = []
    for c in sorted(lower.cells):
        cr = cell_region("_", [c])
        if region_inside(cr, p3) or region_inside(cr, permute_region(p3, MIRROR)):
            continue
        if excluded_by_parallelogram(cr, fixed) is None:
            p45.append(c)
    return [cell_region("anchor", anchor.cells), wide, top, lower, bottom, p3, corner,
            cell_region("p45", p45)]


def case3():
    return [
        cells("inner", [(2, None)] * 3),
        cell_region("outer", [c for c in build_grid(K) if min(min(n) for n in c.nodes) < 2]),
        cells("diamond_top", [None, (None, 2), (None, 2)]),
        cells("diamond_left", [(None, 2), None, (None, 2)]),
        cells("diamond_right", [(None, 2), (None, 2), None]),
        cells("trap_left", [(2, None), (2, None), (None, 2)]),
        cells("trap_right", [(2, None), (None, 2), (2, None)]),
        cells("trap_bottom", [(None, 2), (2, None), (2, None)]),
        cells("trap_small", [(None, 2), (3, None), (3, None)]),
    ]


HEADERS = {
    "case1": ["Case I: a point in the central triangle.",
              "wide: where a second point would be within 4L/10 of it."],
    "case2": ["Case II: p1 in the top triangle of the inner ring.",
              "p45: cells of the lower white region left open for p4 and p5."],
    "case3": ["Case III: all points in the outer ring, cut into diamonds and trapezoids."],
}

if __name__ == "__main__":
    DATA.mkdir(parents=True, exist_ok=True)
    for name, build in (("case1", case1), ("case2", case2), ("case3", case3)):
        regions = build()
        (DATA / f"{name}.regions").write_text(dump_regions(regions, HEADERS[name]))
        print(name, {r.name: len(r.cells) for r in regions})
