"""The k x k triangular grid on T and regions built from it.

Lattice nodes are integer triples ``(a, b, c)`` with ``a + b + c = k``; a
node corresponds to the barycentric point ``(a, b, c) / k``.  Row ``r`` of
the grid (counted from the apex) is the band ``k - r - 1 <= a <= k - r`` and
holds ``2r + 1`` cells, alternating up and down triangles from left to
right.

Every region used by the case analysis is either an explicit set of grid
cells or a *lattice polygon*: the intersection of the plane with bounds
``lo <= x_i <= hi`` on some of the three lattice coordinates.  Triangles,
hexagons, parallelograms, trapezoids and diamonds are all of this form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .geometry import BaryPoint, bary_to_cart_array, diameter, uniform_bary

Bound = Optional[tuple]  # (lo, hi) with either end possibly None


class GridCell(NamedTuple):
    row: int
    index: int
    k: int = 10

    @property
    def orientation(self) -> str:
        return "up" if self.index % 2 == 0 else "down"

    @property
    def nodes(self) -> tuple:
        """The three lattice nodes of the cell, as integer triples."""
        k, r, m = self.k, self.row, self.index // 2
        if self.orientation == "up":
            return ((k - r, r - m, m), (k - r - 1, r - m + 1, m), (k - r - 1, r - m, m + 1))
        return ((k - r, r - m, m), (k - r, r - m - 1, m + 1), (k - r - 1, r - m, m + 1))

    @property
    def bary(self) -> np.ndarray:
        return np.array(self.nodes, dtype=float) / self.k

    @property
    def polygon(self) -> np.ndarray:
        """Cartesian vertices, shape (3, 2)."""
        return bary_to_cart_array(self.bary)

    @property
    def centroid(self) -> BaryPoint:
        return BaryPoint(*self.bary.mean(axis=0))

    @property
    def area(self) -> float:
        return 1.0 / self.k ** 2

    def half_planes(self) -> tuple:
        """``(sign, bound)``: up cells are ``x >= bound``, down cells ``x <= bound``."""
        nodes = np.array(self.nodes)
        if self.orientation == "up":
            return 1, nodes.min(axis=0)
        return -1, nodes.max(axis=0)


def build_grid(k: int = 10) -> list:
    """All ``k**2`` cells of the k-refinement of T, row by row from the apex."""
    if k < 1:
        raise ValueError("grid order must be at least 1")
    return [GridCell(r, i, k) for r in range(k) for i in range(2 * r + 1)]


def lattice_nodes(k: int) -> list:
    """The ``(k+1)(k+2)/2`` lattice nodes of T, lexicographic in (a, b)."""
    return [(a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a + 1)]


def _norm_bounds(bounds) -> tuple:
    out = []
    for bd in bounds:
        if bd is None:
            out.append((None, None))
        else:
            out.append((bd[0], bd[1]))
    return tuple(out)


def _satisfies(node, bounds, tol=1e-9) -> bool:
    for x, (lo, hi) in zip(node, bounds):
        if lo is not None and x < lo - tol:
            return False
        if hi is not None and x > hi + tol:
            return False
    return True


def lattice_polygon(bounds, k: int) -> np.ndarray:
    """Vertices (lattice coordinates, counter-clockwise) of a lattice polygon.

    The polygon is ``{x : x0 + x1 + x2 = k, lo_i <= x_i <= hi_i}``; it may
    extend outside T.  Raises ``ValueError`` if it is empty or unbounded.
    """
    bounds = _norm_bounds(bounds)
    lines = [(i, v) for i, bd in enumerate(bounds) for v in bd if v is not None]
    cand = []
    for (i, vi) in lines:
        for (j, vj) in lines:
            if i >= j:
                continue
            node = [0.0, 0.0, 0.0]
            node[i], node[j] = vi, vj
            node[3 - i - j] = k - vi - vj
            if _satisfies(node, bounds) and not any(np.allclose(node, c) for c in cand):
                cand.append(node)
    if len(cand) < 3:
        raise ValueError(f"lattice polygon {bounds} is empty or unbounded")
    pts = np.array(cand, dtype=float)
    xy = bary_to_cart_array(pts / k)
    ang = np.arctan2(*(xy - xy.mean(axis=0)).T[::-1])
    return pts[np.argsort(ang)]


@dataclass(frozen=True)
class RegionSpec:
    """A closed region of T: a set of grid cells, or a lattice polygon.

    For a lattice polygon, ``cells`` lists the grid cells of T inside it,
    while ``area`` and ``diam`` refer to the whole polygon (which may stick
    out of T, as the long parallelograms do).
    """

    name: str
    cells: frozenset
    k: int = 10
    bounds: Optional[tuple] = None

    @cached_property
    def vertices(self) -> np.ndarray:
        """Barycentric vertex set whose convex hulls make up the region."""
        if self.bounds is not None:
            return lattice_polygon(self.bounds, self.k) / self.k
        if not self.cells:
            raise ValueError(f"region {self.name!r} is empty")
        nodes = sorted({n for c in self.cells for n in c.nodes})
        return np.array(nodes, dtype=float) / self.k

    @property
    def area(self) -> float:
        if self.bounds is None:
            return len(self.cells) / self.k ** 2
        v = self.vertices
        # fan triangulation of a convex polygon in barycentric coordinates
        d = v[1:] - v[0]
        return float(abs((d[:-1, 1] * d[1:, 2] - d[:-1, 2] * d[1:, 1]).sum()))

    @property
    def diam(self) -> float:
        return diameter(bary_to_cart_array(self.vertices))

    def contains(self, p) -> bool:
        return bool(region_membership_array(np.asarray([p], dtype=float), self)[0])

    def violation(self, pts: np.ndarray) -> np.ndarray:
        """How far (lattice units) each point is from satisfying the region; 0 inside."""
        x = np.asarray(pts, dtype=float) * self.k
        if self.bounds is not None:
            return _bounds_violation(x, self.bounds)
        if not self.cells:
            return np.full(len(x), np.inf)
        viol = np.full(len(x), np.inf)
        for c in self.cells:
            sign, bd = c.half_planes()
            v = np.clip(sign * (bd - x), 0.0, None).max(axis=1)
            viol = np.minimum(viol, v)
        return viol


def _bounds_violation(x: np.ndarray, bounds) -> np.ndarray:
    v = np.zeros(len(x))
    for i, (lo, hi) in enumerate(_norm_bounds(bounds)):
        if lo is not None:
            v = np.maximum(v, lo - x[:, i])
        if hi is not None:
            v = np.maximum(v, x[:, i] - hi)
    return v


def cells_in_bounds(bounds, k: int = 10) -> frozenset:
    bounds = _norm_bounds(bounds)
    return frozenset(c for c in build_grid(k) if all(_satisfies(n, bounds) for n in c.nodes))


def lattice_region(name: str, bounds, k: int = 10) -> RegionSpec:
    """Region cut out of the lattice by coordinate bounds ``[(lo, hi) | None] * 3``."""
    bounds = _norm_bounds(bounds)
    return RegionSpec(name, cells_in_bounds(bounds, k), k, bounds)


def cell_region(name: str, cells: Iterable[GridCell], k: int = 10) -> RegionSpec:
    return RegionSpec(name, frozenset(cells), k)


def region_membership(p: Sequence, r: RegionSpec, tol: float = 1e-9) -> bool:
    """Closed membership test: boundary points count as inside."""
    return bool(region_membership_array(np.asarray([p], dtype=float), r, tol)[0])


def region_membership_array(pts: np.ndarray, r: RegionSpec, tol: float = 1e-9) -> np.ndarray:
    return r.violation(pts) <= tol


# -- constructors for the shapes used by the covering arguments ------------

@dataclass(frozen=True)
class ParallelogramSpec:
    """Lattice parallelogram with ``2ab`` unit cells.

    ``direction`` (0, 1 or 2) names the unconstrained lattice coordinate;
    coordinate ``(direction + 1) % 3`` spans ``[anchor, anchor + a]`` and
    coordinate ``(direction + 2) % 3`` spans ``[anchor, anchor + b]``.
    ``anchor`` is a lattice node (it may lie outside T).
    """

    a: int
    b: int
    anchor: tuple
    direction: int = 0
    k: int = 10

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("parallelogram sides must be positive")
        if self.direction not in (0, 1, 2):
            raise ValueError("direction must be 0, 1 or 2")
        if sum(self.anchor) != self.k:
            raise ValueError(f"anchor {self.anchor} is not a lattice node of order {self.k}")

    @property
    def bounds(self) -> tuple:
        u, v = (self.direction + 1) % 3, (self.direction + 2) % 3
        bd = [None, None, None]
        bd[u] = (self.anchor[u], self.anchor[u] + self.a)
        bd[v] = (self.anchor[v], self.anchor[v] + self.b)
        return _norm_bounds(bd)

    @property
    def area(self) -> float:
        return 2 * self.a * self.b / self.k ** 2

    @property
    def halving_applies(self) -> bool:
        """Whether half the area stays within the small-triangle threshold 24/100."""
        return 2 * self.a * self.b * 100 <= 48 * self.k ** 2


def make_parallelogram(spec: ParallelogramSpec, name: Optional[str] = None) -> RegionSpec:
    """Region for a lattice parallelogram; it must overlap T in at least one cell."""
    region = lattice_region(name or f"par({spec.a},{spec.b})@{spec.anchor}/{spec.direction}",
                            spec.bounds, spec.k)
    if not region.cells:
        raise ValueError(f"parallelogram {spec} does not overlap the grid")
    assert math.isclose(region.area, spec.area, abs_tol=1e-12)
    if spec.halving_applies:
        assert region.area <= 0.48 + 1e-12
    return region


def make_hexagon(center: tuple, k: int = 10, radius: int = 2, name: Optional[str] = None) -> RegionSpec:
    """Regular hexagon of side ``radius`` cells around a lattice node.

    With the default radius its diameter is 4/10 of the side of T.
    """
    if sum(center) != k:
        raise ValueError(f"{center} is not a lattice node of order {k}")
    if min(center) < radius:
        raise ValueError(f"hexagon around {center} leaves the grid")
    bounds = tuple((x - radius, x + radius) for x in center)
    return lattice_region(name or f"hex@{center}", bounds, k)


def make_triangle(corner: tuple, side: int, up: bool = True, k: int = 10,
                  name: Optional[str] = None) -> RegionSpec:
    """Lattice triangle of the given side.

    For an up triangle ``corner`` holds the lower bounds of the three
    coordinates (summing to ``k - side``); for a down triangle the upper
    bounds (summing to ``k + side``).
    """
    if sum(corner) != (k - side if up else k + side):
        raise ValueError(f"corner {corner} inconsistent with side {side}")
    bounds = tuple((x, None) if up else (None, x) for x in corner)
    region = lattice_region(name or f"tri{'+' if up else '-'}{side}@{corner}", bounds, k)
    if len(region.cells) != side * side:
        raise ValueError(f"triangle {corner}/{side} leaves the grid")
    return region


def whole_triangle(k: int = 10) -> RegionSpec:
    return lattice_region("T", ((0, None), (0, None), (0, None)), k)


# -- coverage ------------------------------------------------------------

@dataclass
class CoverageReport:
    covered: bool
    samples: int
    misses: int
    worst_miss: Optional[BaryPoint] = None
    worst_depth: float = 0.0


def _cell_samples(cell: GridCell, m: int, rng: np.random.Generator) -> np.ndarray:
    """Sub-lattice of order ``m`` on the cell (boundary included) plus as many seeded uniform points."""
    corners = cell.bary
    w = np.array([(i, j, m - i - j) for i in range(m + 1) for j in range(m + 1 - i)], float) / m
    return np.vstack([w @ corners, uniform_bary(rng, len(w)) @ corners])


def coverage_check(regions: Sequence[RegionSpec], target: RegionSpec, samples: int = 20000,
                   seed: int = 0, tol: float = 1e-9) -> CoverageReport:
    """Check, by stratified sampling of ``target``, that the regions cover it.

    Every cell of the target is sampled on a regular sub-lattice (so edges
    and corners are hit exactly) plus seeded jitter inside each sub-cell.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    cells = sorted(target.cells)
    if not cells:
        raise ValueError(f"target {target.name!r} has no cells")
    m = max(1, math.ceil(math.sqrt(samples / len(cells) / 2)))
    rng = np.random.default_rng(seed)
    pts = np.vstack([_cell_samples(c, m, rng) for c in cells])
    pts = pts[target.violation(pts) <= tol]
    depth = np.full(len(pts), np.inf)
    for r in regions:
        depth = np.minimum(depth, r.violation(pts))
    missed = depth > tol
    report = CoverageReport(not missed.any(), len(pts), int(missed.sum()))
    if missed.any():
        i = int(np.argmax(np.where(missed, depth, -1.0)))
        report.worst_miss = BaryPoint(*map(float, pts[i]))
        report.worst_depth = float(depth[i])
    return report


def max_cross_distance(r1: RegionSpec, r2: RegionSpec) -> float:
    """Largest distance between a point of ``r1`` and a point of ``r2``.

    Both regions are unions of convex pieces, so the maximum is attained at
    a pair of vertices.
    """
    a = bary_to_cart_array(r1.vertices)
    b = bary_to_cart_array(r2.vertices)
    return float(np.sqrt(((a[:, None, :] - b[None, :, :]) ** 2).sum(-1)).max())


def cells_within(anchor: RegionSpec, radius: float, k: int = 10) -> frozenset:
    """Grid cells every point of which is within ``radius`` of every point of ``anchor``."""
    out = []
    for c in build_grid(k):
        if max_cross_distance(anchor, cell_region("_", [c], k)) <= radius + 1e-12:
            out.append(c)
    return frozenset(out)


# -- region files ----------------------------------------------------------

def dump_regions(regions: Sequence[RegionSpec], header: Sequence[str] = ()) -> str:
    """Serialise cell-backed regions to the line-oriented region format."""
    ks = {r.k for r in regions}
    if len(ks) > 1:
        raise ValueError("all regions in one file must share a grid order")
    lines = [f"# {h}" if h else "#" for h in header]
    lines.append(f"grid {ks.pop() if ks else 10}")
    for r in regions:
        lines.append("")
        lines.append(f"region {r.name}")
        lines.extend(f"cell {c.row} {c.index}" for c in sorted(r.cells))
    return "\n".join(lines) + "\n"


def parse_regions(text: str) -> dict:
    """Parse region-file text into ``{name: RegionSpec}`` (file order preserved)."""
    k = 10
    current = None
    cells: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "grid" and len(parts) == 2:
            if cells:
                raise ValueError(f"line {lineno}: grid must precede regions")
            k = int(parts[1])
        elif parts[0] == "region" and len(parts) == 2:
            current = parts[1]
            if current in cells:
                raise ValueError(f"line {lineno}: duplicate region {current!r}")
            cells[current] = []
        elif parts[0] == "cell" and len(parts) == 3:
            if current is None:
                raise ValueError(f"line {lineno}: cell outside a region")
            row, idx = int(parts[1]), int(parts[2])
            if not (0 <= row < k and 0 <= idx <= 2 * row):
                raise ValueError(f"line {lineno}: no cell ({row}, {idx}) in a grid of order {k}")
            cells[current].append(GridCell(row, idx, k))
        else:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}")
    return {name: cell_region(name, cs, k) for name, cs in cells.items()}


def load_regions(path) -> dict:
    return parse_regions(Path(path).read_text())


# -- symmetries ------------------------------------------------------------

ROTATE = (2, 0, 1)  # new (a, b, c) = old (c, a, b): a third of a turn
MIRROR = (0, 2, 1)  # swap the two base vertices


def _cell_index(k: int) -> dict:
    return {frozenset(c.nodes): c for c in build_grid(k)}


def permute_region(region: RegionSpec, perm: tuple, name: Optional[str] = None) -> RegionSpec:
    """Image of a region under the symmetry of T that permutes the lattice coordinates.

    Coordinate ``i`` of the image is coordinate ``perm[i]`` of the original.
    """
    name = name or region.name
    if region.bounds is not None:
        return lattice_region(name, tuple(region.bounds[j] for j in perm), region.k)
    index = _cell_index(region.k)
    cells = [index[frozenset(tuple(n[j] for j in perm) for n in c.nodes)] for c in region.cells]
    return cell_region(name, cells, region.k)


def region_inside(inner: RegionSpec, outer: RegionSpec, tol: float = 1e-9) -> bool:
    """Whether ``inner`` lies in ``outer``; exact when ``outer`` is a lattice polygon."""
    if outer.bounds is None:
        return inner.cells <= outer.cells
    return bool((outer.violation(inner.vertices) <= tol).all())
