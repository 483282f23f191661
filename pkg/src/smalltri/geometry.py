"""Geometric primitives over the unit-area equilateral reference triangle.

Points are carried in barycentric coordinates ``(l1, l2, l3)`` with respect
to the vertices ``v0`` (apex), ``v1`` (bottom left) and ``v2`` (bottom right).
Because the reference triangle has area 1, the area of the triangle spanned
by three points is simply the absolute determinant of their weight matrix.

Functions that take single points accept any length-3 sequence, so exact
``fractions.Fraction`` weights flow through :func:`triple_area` untouched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

#: side length of the equilateral triangle of unit area
SIDE = 2.0 / 3.0 ** 0.25
L = SIDE

BARY_TOL = 1e-12


class CartPoint(NamedTuple):
    x: float
    y: float


class BaryPoint(NamedTuple):
    l1: float
    l2: float
    l3: float

    @classmethod
    def checked(cls, l1, l2, l3, tol: float = BARY_TOL) -> "BaryPoint":
        p = cls(l1, l2, l3)
        validate_bary(p, tol)
        return p


def validate_bary(p: Sequence, tol: float = BARY_TOL) -> None:
    """Raise ``ValueError`` unless ``p`` is a point of the closed triangle."""
    if len(p) != 3:
        raise ValueError(f"barycentric point needs 3 weights, got {len(p)}")
    if any(not math.isfinite(float(w)) for w in p):
        raise ValueError(f"non-finite barycentric weights {tuple(p)}")
    if abs(sum(p) - 1) > tol:
        raise ValueError(f"weights {tuple(p)} do not sum to 1")
    if min(p) < -tol:
        raise ValueError(f"point {tuple(p)} lies outside the triangle")


@dataclass(frozen=True)
class ReferenceTriangle:
    """Equilateral triangle of area 1, apex on the positive y axis.

    The base is horizontal and centred on the origin.
    """

    v0: CartPoint
    v1: CartPoint
    v2: CartPoint
    side_length: float

    @classmethod
    def standard(cls) -> "ReferenceTriangle":
        h = math.sqrt(3.0) / 2.0 * SIDE
        return cls(
            CartPoint(0.0, h),
            CartPoint(-SIDE / 2.0, 0.0),
            CartPoint(SIDE / 2.0, 0.0),
            SIDE,
        )

    @property
    def vertices(self) -> np.ndarray:
        return np.array([self.v0, self.v1, self.v2], dtype=float)

    @property
    def centroid(self) -> CartPoint:
        x, y = self.vertices.mean(axis=0)
        return CartPoint(float(x), float(y))


T = ReferenceTriangle.standard()


def bary_to_cart(p: Sequence, t: ReferenceTriangle = T) -> CartPoint:
    l1, l2, l3 = (float(w) for w in p)
    x = l1 * t.v0.x + l2 * t.v1.x + l3 * t.v2.x
    y = l1 * t.v0.y + l2 * t.v1.y + l3 * t.v2.y
    return CartPoint(x, y)


def cart_to_bary(c: Sequence, t: ReferenceTriangle = T) -> BaryPoint:
    """Inverse of :func:`bary_to_cart` (no clamping, so it also works outside T)."""
    (x0, y0), (x1, y1), (x2, y2) = t.v0, t.v1, t.v2
    x, y = float(c[0]), float(c[1])
    det = (y1 - y2) * (x0 - x2) + (x2 - x1) * (y0 - y2)
    l1 = ((y1 - y2) * (x - x2) + (x2 - x1) * (y - y2)) / det
    l2 = ((y2 - y0) * (x - x2) + (x0 - x2) * (y - y2)) / det
    return BaryPoint(l1, l2, 1.0 - l1 - l2)


def bary_to_cart_array(p: np.ndarray, t: ReferenceTriangle = T) -> np.ndarray:
    """Vectorised :func:`bary_to_cart` for an ``(..., 3)`` array."""
    return np.asarray(p, dtype=float) @ t.vertices


def _det3(p, q, r):
    return (p[0] * (q[1] * r[2] - q[2] * r[1])
            - p[1] * (q[0] * r[2] - q[2] * r[0])
            + p[2] * (q[0] * r[1] - q[1] * r[0]))


def triple_area(p: Sequence, q: Sequence, r: Sequence):
    """Area of triangle pqr as a fraction of the reference triangle's area.

    Works with floats or exact rationals; collinear points give 0.
    """
    return abs(_det3(p, q, r))


def shoelace_area(a: Sequence, b: Sequence, c: Sequence) -> float:
    """Area of a Cartesian triangle (absolute units)."""
    return abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])) / 2.0


def triple_areas(points: np.ndarray, triples: np.ndarray) -> np.ndarray:
    """Areas for an index array of triples, vectorised.

    ``points`` has shape ``(..., n, 3)``; ``triples`` has shape ``(m, 3)``.
    The result has shape ``(..., m)``.
    """
    P = points[..., triples[:, 0], :]
    Q = points[..., triples[:, 1], :]
    R = points[..., triples[:, 2], :]
    # weights sum to 1, so the 3x3 determinant reduces to a 2x2 one
    d = ((Q[..., 1] - P[..., 1]) * (R[..., 2] - P[..., 2])
         - (Q[..., 2] - P[..., 2]) * (R[..., 1] - P[..., 1]))
    return np.abs(d)


def distance(p: Sequence, q: Sequence, t: ReferenceTriangle = T) -> float:
    a = bary_to_cart(p, t)
    b = bary_to_cart(q, t)
    return math.hypot(a.x - b.x, a.y - b.y)


def diameter(points: Sequence[Sequence[float]]) -> float:
    """Largest pairwise distance of a non-empty list of Cartesian points."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("diameter of an empty point set")
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((diff ** 2).sum(-1)).max())


def strip_width(d: float, sigma: float) -> float:
    """Full width of ``{x : area(p, q, x) <= sigma}`` for a base segment of length ``d``.

    Half of the width lies on each side of line pq; areas are in units of
    the reference triangle, lengths in absolute units.
    """
    if d <= 0:
        raise ValueError("strip undefined for a zero-length base")
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    return 4.0 * sigma / d


@dataclass(frozen=True)
class Strip:
    """Closed band of points forming a triangle of area at most ``sigma`` with a segment."""

    anchor_a: CartPoint
    anchor_b: CartPoint
    half_width: float

    def __post_init__(self):
        if self.half_width <= 0:
            raise ValueError("half_width must be positive")
        if tuple(self.anchor_a) == tuple(self.anchor_b):
            raise ValueError("strip anchors coincide")

    @classmethod
    def for_area(cls, a: Sequence, b: Sequence, sigma: float) -> "Strip":
        a, b = CartPoint(*map(float, a)), CartPoint(*map(float, b))
        d = math.hypot(b.x - a.x, b.y - a.y)
        return cls(a, b, strip_width(d, sigma) / 2.0)

    def _unit(self):
        dx = self.anchor_b.x - self.anchor_a.x
        dy = self.anchor_b.y - self.anchor_a.y
        n = math.hypot(dx, dy)
        return dx / n, dy / n

    def signed_offset(self, c: Sequence) -> float:
        ux, uy = self._unit()
        return (c[0] - self.anchor_a.x) * -uy + (c[1] - self.anchor_a.y) * ux

    def contains(self, c: Sequence, tol: float = 1e-12) -> bool:
        return abs(self.signed_offset(c)) <= self.half_width + tol

    def boundary_point(self, s: float, side: int = 1) -> CartPoint:
        """Point on the boundary line ``side`` (+1 or -1), ``s`` units along the axis."""
        ux, uy = self._unit()
        h = side * self.half_width
        return CartPoint(self.anchor_a.x + s * ux - h * uy,
                         self.anchor_a.y + s * uy + h * ux)


def project_to_triangle(p: np.ndarray) -> np.ndarray:
    """Clamp negative weights to zero and renormalise (idempotent, lands in closed T)."""
    q = np.clip(np.asarray(p, dtype=float), 0.0, None)
    s = q.sum(axis=-1, keepdims=True)
    # all-zero rows cannot arise from weights summing to 1, but guard anyway
    s = np.where(s > 0, s, 1.0)
    return q / s


def uniform_bary(rng: np.random.Generator, size) -> np.ndarray:
    """Uniform points of T via the square-root method; shape ``size + (3,)``."""
    size = (size,) if np.isscalar(size) else tuple(size)
    r1 = np.sqrt(rng.random(size))
    r2 = rng.random(size)
    return np.stack([1.0 - r1, r1 * (1.0 - r2), r1 * r2], axis=-1)
