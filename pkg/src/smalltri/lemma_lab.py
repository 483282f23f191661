"""Closed forms behind the two-close-points lemma, and checks on them.

Setting: the segment ``p_i p_j`` has length ``4L/10`` with ``p_i`` on side
``pr`` and ``p_j`` on side ``pq`` of T; ``A`` is the angle the segment makes
with side ``pq`` at ``p_j``.  The band of points forming a triangle of area
at most 24/100 with the segment leaves a corner triangle ``I`` at ``r``.
Along side ``pr`` we have ``a = |p p_i|``, ``b = |p_i q_i|`` (across the
band) and ``c = |q_i r|``.  Lengths below are in units of L unless noted.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from scipy import optimize

from .geometry import SIDE, strip_width, uniform_bary

SMALL = 0.24
BASE = 0.4  # segment length 4L/10, in units of L
SQ3 = math.sqrt(3.0)
PI3 = math.pi / 3.0


def _check_angle(A, hi=PI3):
    A = np.asarray(A, dtype=float)
    if np.any(A < 0) or np.any(A > hi + 1e-15):
        raise ValueError(f"angle outside [0, {hi}]")
    return A


def side_a(A):
    """``|p p_i|`` by the law of sines in triangle ``p p_i p_j``."""
    return 4.0 * np.sin(A) / (5.0 * SQ3)


def side_b(A):
    """Distance along ``pr`` needed to cross the half band of width ``3*sqrt(3)/10``."""
    return (3.0 * SQ3 / 10.0) / np.cos(A - math.pi / 6.0)


def side_c(A):
    """``|q_i r|`` written out in full rather than as ``1 - a - b``."""
    return 1.0 - 4.0 / (5.0 * SQ3) * np.sin(A) - 3.0 * SQ3 / (10.0 * np.cos(A - math.pi / 6.0))


def abc_of_angle(A):
    """``(a, b, c)`` in units of L for ``0 <= A <= pi/3`` (scalar or array)."""
    A = _check_angle(A)
    out = side_a(A), side_b(A), side_c(A)
    if A.ndim == 0:
        return tuple(float(x) for x in out)
    return out


def region_area(A):
    """Area of the corner triangle ``I`` (fraction of T) as a function of ``A``.

    ``|I| = c^2 sin(pi/3 + A) / sin(pi/3 - A)`` with ``c`` in units of L,
    because half of ``L^2 sin(pi/3)`` is the unit area of T.  At ``A = pi/3``
    the value is the limit 0.
    """
    A = _check_angle(A)
    c = side_c(A)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = c * c * np.sin(PI3 + A) / np.sin(PI3 - A)
    val = np.where(np.isclose(A, PI3, rtol=0, atol=1e-15), 0.0, val)
    return float(val) if val.ndim == 0 else val


def region_area_geometric(A: float) -> float:
    """Area of ``I`` built from coordinates, independent of the closed forms.

    Places ``p`` at the apex, ``r`` bottom left and ``q`` bottom right, puts
    ``p_j`` on ``pq`` so that the segment has length ``4L/10`` and meets
    ``pq`` at angle ``A``, offsets the line by the strip half width and
    clips the far corner at ``r``.
    """
    Ls = SIDE
    p = np.array([0.0, SQ3 / 2 * Ls])
    r = np.array([-Ls / 2, 0.0])
    q = np.array([Ls / 2, 0.0])
    u_pr = (r - p) / Ls
    u_pq = (q - p) / Ls
    d = BASE * Ls
    # triangle p p_i p_j: angle pi/3 at p, A at p_j, 2pi/3 - A at p_i
    pi_ = p + u_pr * d * math.sin(A) / math.sin(PI3)
    pj_ = p + u_pq * d * math.sin(2 * PI3 - A) / math.sin(PI3)
    axis = (pj_ - pi_) / np.linalg.norm(pj_ - pi_)
    normal = np.array([-axis[1], axis[0]])
    if np.dot(r - pi_, normal) < 0:
        normal = -normal
    h = strip_width(np.linalg.norm(pj_ - pi_), SMALL) / 2
    # the far boundary line: x . normal = pi_ . normal + h
    off = np.dot(pi_, normal) + h

    def hit(a0, a1):
        t = (off - np.dot(a0, normal)) / np.dot(a1 - a0, normal)
        return a0 + t * (a1 - a0)

    qi = hit(p, r)
    qj = hit(q, r)
    return abs((qi[0] - r[0]) * (qj[1] - r[1]) - (qj[0] - r[0]) * (qi[1] - r[1])) / 2


def region_area_montecarlo(A: float, samples: int = 200_000, seed: int = 0) -> float:
    """Fraction of T outside the band, estimated by uniform sampling."""
    a = float(side_a(A))
    pi_ = np.array([1.0 - a, a, 0.0])  # p = v0, r = v1
    pj_len = BASE * math.sin(2 * PI3 - A) / math.sin(PI3)
    pj_ = np.array([1.0 - pj_len, 0.0, pj_len])
    x = uniform_bary(np.random.default_rng(seed), samples)
    P = np.broadcast_to(pi_, x.shape)
    Q = np.broadcast_to(pj_, x.shape)
    d = ((Q[:, 1] - P[:, 1]) * (x[:, 2] - P[:, 2]) - (Q[:, 2] - P[:, 2]) * (x[:, 1] - P[:, 1]))
    return float((np.abs(d) > SMALL).mean())


# -- the contraction chain -------------------------------------------------------

def c_upper(A):
    """Bound on ``c`` from dropping the cosine: ``1 - 4 sin(A)/(5 sqrt 3) - 3 sqrt 3 / 10``."""
    return 1.0 - 4.0 / (5.0 * SQ3) * np.sin(A) - 3.0 * SQ3 / 10.0


def angle_floor(sin_bound: float) -> float:
    """Smallest ``A`` in ``[0, pi/3]`` with ``sin(pi/3 - A) <= sin_bound``, by bisection."""
    return float(optimize.bisect(lambda A: math.sin(PI3 - A) - sin_bound, 0.0, PI3, xtol=1e-15))


@dataclass
class Checkpoint:
    name: str
    value: float
    bound: float
    holds: bool


def contraction_chain() -> list:
    """The iterated bounds ``c <= 0.4 -> A > 0.317 -> c < 0.337 -> A > 0.553 -> c < 0.24``."""
    out = []
    # |I| >= 0.24 with c <= 0.4 forces sin(pi/3+A)/sin(pi/3-A) >= 1.5, so sin(pi/3 - A) < 2/3
    A1 = angle_floor(BASE ** 2 / SMALL)
    out.append(Checkpoint("A_floor_1", A1, 0.317, A1 > 0.317))
    c1 = float(c_upper(0.317))
    out.append(Checkpoint("c_upper(0.317)", c1, 0.337, c1 < 0.337))
    s2 = 0.337 ** 2 / SMALL
    out.append(Checkpoint("sin_bound_2", s2, 0.474, s2 < 0.474))
    A2 = angle_floor(0.474)
    out.append(Checkpoint("A_floor_2", A2, 0.553, A2 > 0.553))
    c2 = float(c_upper(0.553))
    out.append(Checkpoint("c_upper(0.553)", c2, 0.24, c2 < 0.24))
    return out


# -- the scan -----------------------------------------------------------------

@dataclass
class LemmaScanReport:
    angles: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    region_area: np.ndarray
    max_region_area: float
    argmax_angle: float
    max_abc_residual: float
    max_sin_cos_residual: float
    max_region_over_c: float
    checkpoints: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.max_region_area < SMALL and self.max_abc_residual <= 1e-12
                and self.max_sin_cos_residual <= 1e-12 and self.max_region_over_c < 1.0
                and all(cp.holds for cp in self.checkpoints))

    def summary(self) -> dict:
        return {
            "step": float(self.angles[1] - self.angles[0]) if len(self.angles) > 1 else None,
            "grid_points": int(len(self.angles)),
            "angle_range": [0.0, PI3],
            "max_region_area": self.max_region_area,
            "argmax_angle": self.argmax_angle,
            "threshold": SMALL,
            "margin": SMALL - self.max_region_area,
            "max_abc_residual": self.max_abc_residual,
            "max_sin_cos_residual": self.max_sin_cos_residual,
            "max_region_over_c": self.max_region_over_c,
            "checkpoints": [asdict(cp) for cp in self.checkpoints],
            "notes": list(self.notes),
            "passed": self.passed,
        }

    def to_csv(self) -> str:
        rows = ["A,a,b,c,region_area"]
        for row in zip(self.angles, self.a, self.b, self.c, self.region_area):
            rows.append(",".join(repr(float(v)) for v in row))
        return "\n".join(rows) + "\n"

    def to_json(self) -> str:
        return json.dumps({"schema_version": 1, **self.summary()}, indent=2) + "\n"


def scan_lemma(step: float = 1e-5) -> LemmaScanReport:
    """Tabulate a, b, c and ``|I|`` on ``A = 0, step, 2 step, ... < pi/3``."""
    if not 0 < step <= 1e-3:
        raise ValueError("step must lie in (0, 1e-3]")
    A = np.arange(0.0, PI3, step)
    a, b, c = side_a(A), side_b(A), side_c(A)
    area = region_area(A)
    i = int(np.argmax(area))
    with np.errstate(divide="ignore"):
        over_c = np.where(c > 0, area / c, 0.0)
    notes = ["angle range scanned is [0, pi/3); the text's [0, 2pi/3] only makes sense for the cotangent sum",
             "|I| < c (units of L) is checked as an inequality on the grid"]
    if np.any(np.diff(area) > 0):
        notes.append(f"|I| is not monotone decreasing: it rises from {area[0]:.6f} at A=0 "
                     f"to {area[i]:.6f} at A={A[i]:.5f}")
    return LemmaScanReport(
        angles=A, a=a, b=b, c=c, region_area=area,
        max_region_area=float(area[i]), argmax_angle=float(A[i]),
        max_abc_residual=float(np.abs(a + b + c - 1.0).max()),
        max_sin_cos_residual=float(np.abs(np.sin(PI3 + A) - np.cos(A - math.pi / 6)).max()),
        max_region_over_c=float(over_c.max()),
        checkpoints=contraction_chain(),
        notes=notes,
    )


# -- cotangent sum -------------------------------------------------------------

def cot_sum(x):
    """``1/tan(x) + 1/tan(2 pi/3 - x)``; diverges at both ends of ``(0, 2 pi/3)``."""
    return 1.0 / np.tan(x) + 1.0 / np.tan(2 * PI3 - x)


def cot_sum_min() -> tuple:
    """Minimiser and minimum of :func:`cot_sum` on ``(0, 2 pi/3)``.

    Golden-section search locates the minimum; the function is too flat
    there to pin the argument below ~1e-8 from values alone, so the bracket
    is finished by bisection on the sign of the analytic derivative.
    """
    lo, hi = 1e-6, 2 * PI3 - 1e-6
    x0 = optimize.golden(cot_sum, brack=(lo, 1.0, hi), tol=1e-10)

    def deriv(x):
        return -1.0 / math.sin(x) ** 2 + 1.0 / math.sin(2 * PI3 - x) ** 2

    a, b = x0 - 1e-4, x0 + 1e-4
    x = optimize.bisect(deriv, a, b, xtol=1e-15)
    return float(x), float(cot_sum(x))


# -- strip monotonicity ------------------------------------------------------------

@dataclass
class StripComparison:
    d: float
    delta: float
    w: float
    w_prime: float

    @property
    def holds(self) -> bool:
        return self.w - self.w_prime >= self.delta - 1e-12


def compare_strips(d: float, angle: float) -> StripComparison:
    """Widths before and after sliding a base of length ``d`` out to ``4L/10``.

    ``d`` is in absolute units; the shift of the line is
    ``(4L/10 - d) / cot_sum(angle)``.
    """
    full = BASE * SIDE
    f = float(cot_sum(angle)) if 0 < angle < 2 * PI3 else math.inf
    delta = (full - d) / f
    return StripComparison(d, delta, strip_width(d, SMALL), strip_width(full, SMALL))


@dataclass
class ViolationReport:
    trials: int
    violations: int
    worst: Optional[dict] = None
    max_ratio: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.violations == 0


def strip_monotonicity_check(trials: int = 100_000, seed: int = 0) -> ViolationReport:
    """Sample bases ``d < 4L/10`` and angles in ``[0, pi/3]``; count ``w - w' < delta``."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    full = BASE * SIDE
    d = rng.uniform(0.0, full, trials)
    d = np.where(d > 0, d, full / 2)
    ang = rng.uniform(0.0, PI3, trials)
    with np.errstate(divide="ignore"):
        f = np.where(ang > 0, cot_sum(np.where(ang > 0, ang, 1.0)), np.inf)
    delta = (full - d) / f
    w = 4 * SMALL / d
    w_prime = 4 * SMALL / full
    slack = (w - w_prime) - delta
    bad = slack < -1e-12
    worst = int(np.argmin(slack))
    return ViolationReport(trials, int(bad.sum()),
                           {"d": float(d[worst]), "angle": float(ang[worst]), "slack": float(slack[worst])})


# -- parallelogram halving -------------------------------------------------------

def parallelogram_halving_test(trials: int = 100_000, seed: int = 0, snap: float = 0.25) -> ViolationReport:
    """Triangles inside random parallelograms in T never exceed half their area.

    Parallelograms are spanned by random points ``o, o+u, o+v`` of T (rejected
    unless ``o+u+v`` is in T too).  Point parameters ``(s, t)`` are uniform,
    except that each is snapped to the nearer of 0 and 1 with probability
    ``snap`` so that edges and corners, where the bound is tight, get
    positive mass.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    o = np.empty((0, 3))
    u = np.empty((0, 3))
    v = np.empty((0, 3))
    while len(o) < trials:
        m = 2 * (trials - len(o)) + 16
        base = uniform_bary(rng, (m, 3))
        fourth = base[:, 1] + base[:, 2] - base[:, 0]
        ok = (fourth >= 0).all(axis=1)
        o = np.vstack([o, base[ok, 0]])
        u = np.vstack([u, base[ok, 1] - base[ok, 0]])
        v = np.vstack([v, base[ok, 2] - base[ok, 0]])
    o, u, v = o[:trials], u[:trials], v[:trials]
    st = rng.random((trials, 3, 2))
    snapped = rng.random((trials, 3, 2)) < snap
    st = np.where(snapped, np.round(st), st)
    pts = o[:, None, :] + st[..., :1] * u[:, None, :] + st[..., 1:] * v[:, None, :]
    tri = np.abs(triple_areas_rows(pts))
    par = 2.0 * np.abs(u[:, 1] * v[:, 2] - u[:, 2] * v[:, 1])
    keep = par > 1e-15
    ratio = np.where(keep, tri / np.where(keep, par, 1.0), 0.0)
    bad = ratio > 0.5 + 1e-12
    i = int(np.argmax(ratio))
    return ViolationReport(trials, int(bad.sum()),
                           {"parallelogram_area": float(par[i]), "ratio": float(ratio[i])},
                           float(ratio.max()))


def triple_areas_rows(pts: np.ndarray) -> np.ndarray:
    """Signed barycentric determinant of each ``(3, 3)`` block in an ``(m, 3, 3)`` array."""
    P, Q, R = pts[:, 0], pts[:, 1], pts[:, 2]
    return ((Q[:, 1] - P[:, 1]) * (R[:, 2] - P[:, 2]) - (Q[:, 2] - P[:, 2]) * (R[:, 1] - P[:, 1]))
