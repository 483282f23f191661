"""Configuration-level objectives and the explicit extremal constructions."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .geometry import BaryPoint, project_to_triangle, triple_area, triple_areas, validate_bary

QUARTER = Fraction(1, 4)
SIX_25 = Fraction(6, 25)
DEFAULT_THRESHOLDS = (QUARTER, SIX_25)


@lru_cache(maxsize=None)
def triples_index(n: int) -> np.ndarray:
    """All index triples ``i < j < l`` of ``range(n)`` in lexicographic order."""
    return np.array(list(itertools.combinations(range(n), 3)), dtype=np.intp).reshape(-1, 3)


@dataclass(frozen=True)
class Configuration:
    points: tuple

    def __post_init__(self):
        pts = tuple(BaryPoint(*p) for p in self.points)
        if len(pts) < 3:
            raise ValueError(f"a configuration needs at least 3 points, got {len(pts)}")
        for p in pts:
            validate_bary(p)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_array(cls, arr) -> "Configuration":
        return cls(tuple(BaryPoint(*map(float, row)) for row in np.asarray(arr, dtype=float)))

    def __len__(self):
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(w, (int, Fraction)) for p in self.points for w in p)

    def as_array(self) -> np.ndarray:
        return np.array([[float(w) for w in p] for p in self.points])


@dataclass
class TripleAreaReport:
    triples: list
    areas: list
    min_area: float
    min_triple: tuple
    count_at_most: dict = field(default_factory=dict)

    def area_of(self, i: int, j: int, l: int):
        return self.areas[self.triples.index(tuple(sorted((i, j, l))))]


def evaluate(config: Configuration, thresholds: Iterable = DEFAULT_THRESHOLDS) -> TripleAreaReport:
    """Areas of all C(n,3) triples, their minimum and small-triangle counts.

    Exact configurations (Fraction weights) are evaluated exactly.  The
    minimum's triple is the lexicographically first one attaining it, and a
    triangle counts as small when its area is at most the threshold.
    """
    if not isinstance(config, Configuration):
        config = Configuration(tuple(config))
    n = config.n
    idx = triples_index(n)
    if config.is_exact:
        pts = config.points
        areas = [triple_area(pts[i], pts[j], pts[l]) for i, j, l in idx]
    else:
        areas = triple_areas(config.as_array(), idx).tolist()
    best = min(range(len(areas)), key=lambda t: (areas[t], t))
    counts = {s: sum(1 for a in areas if a <= s) for s in thresholds}
    return TripleAreaReport([tuple(map(int, t)) for t in idx], areas, areas[best],
                            tuple(map(int, idx[best])), counts)


def min_area(points: np.ndarray) -> float:
    """Smallest triple area of an ``(n, 3)`` point array (float fast path)."""
    return float(triple_areas(points, triples_index(len(points))).min())


def small_count(points: np.ndarray, sigma: float) -> int:
    return int((triple_areas(points, triples_index(len(points))) <= sigma).sum())


# -- explicit constructions --------------------------------------------------

FIG13_LABELS = ("a", "b", "c", "d", "e")


def fig13_construction() -> Configuration:
    """Five points with no triangle of area below 1/6.

    ``a`` is the apex, ``b`` and ``e`` the midpoints of the two sides through
    it, and ``c``, ``d`` trisect the opposite side.  Points are returned in
    the order a, b, c, d, e with exact rational weights.
    """
    F = Fraction
    return Configuration((
        BaryPoint(F(1), F(0), F(0)),
        BaryPoint(F(1, 2), F(1, 2), F(0)),
        BaryPoint(F(0), F(2, 3), F(1, 3)),
        BaryPoint(F(0), F(1, 3), F(2, 3)),
        BaryPoint(F(1, 2), F(0), F(1, 2)),
    ))


def vertices_and_centroid() -> Configuration:
    F = Fraction
    return Configuration((
        BaryPoint(F(1), F(0), F(0)),
        BaryPoint(F(0), F(1), F(0)),
        BaryPoint(F(0), F(0), F(1)),
        BaryPoint(F(1, 3), F(1, 3), F(1, 3)),
    ))


CLUSTER_CENTERS = vertices_and_centroid().points


def clustered_construction(k: int, eps: float, seed: int = 0) -> Configuration:
    """``k`` points near each of the three vertices and the centroid.

    Each point is its cluster centre moved by a random in-plane offset of
    barycentric length at most ``eps`` and projected back into T.  With
    ``eps == 0`` the result is exact.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 0 <= eps < 0.01:
        raise ValueError("eps must lie in [0, 1/100)")
    if eps == 0:
        return Configuration(tuple(c for c in CLUSTER_CENTERS for _ in range(k)))
    rng = np.random.default_rng(seed)
    centers = np.array([[float(w) for w in c] for c in CLUSTER_CENTERS])
    pts = np.repeat(centers, k, axis=0)
    # random direction in the plane sum(w) = 0, radius uniform in the disc
    d = rng.normal(size=pts.shape)
    d -= d.mean(axis=1, keepdims=True)
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    r = eps * np.sqrt(rng.random(len(pts)))[:, None]
    return Configuration.from_array(project_to_triangle(pts + r * d))


def clustered_fraction_exact(k: int) -> Fraction:
    """Small-triple fraction of the eps -> 0 cluster construction with ``n = 4k``.

    Only triples drawn from three distinct clusters are big, giving
    ``1 - 4k^3 / C(4k, 3)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = 4 * k
    if n < 3:
        raise ValueError("need at least 3 points")
    return 1 - Fraction(4 * k ** 3, math.comb(n, 3))


def averaging_bound(n: int) -> Fraction:
    """Small triangles forced among ``n`` points if every 5 points force 3.

    Conditional on an open conjecture; report it, never assert it.
    """
    if n < 5:
        raise ValueError("the averaging bound needs n >= 5")
    return Fraction(3, 10) * math.comb(n, 3)


# -- configuration files -------------------------------------------------------

def _parse_weight(tok: str):
    if "/" in tok:
        return Fraction(tok)
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def parse_configuration(text: str) -> Configuration:
    """One point per line as ``l1 l2 l3``; decimals or ``p/q``; ``#`` comments.

    A file with only integer and rational weights loads as an exact
    configuration.
    """
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 3:
            raise ValueError(f"line {lineno}: expected 3 weights, got {len(toks)}")
        try:
            w = [_parse_weight(t) for t in toks]
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if any(isinstance(x, float) for x in w):
            w = [float(x) for x in w]
        else:
            w = [Fraction(x) for x in w]
        pts.append(BaryPoint(*w))
    return Configuration(tuple(pts))


def format_configuration(config: Configuration, comment: Optional[str] = None) -> str:
    lines = [f"# {comment}"] if comment else []
    for p in config.points:
        lines.append(" ".join(str(w) if isinstance(w, Fraction) else repr(float(w)) for w in p))
    return "\n".join(lines) + "\n"


def load_configuration(path) -> Configuration:
    return parse_configuration(Path(path).read_text())
