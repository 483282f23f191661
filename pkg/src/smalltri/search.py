"""Derivative-free search for extremal configurations, plus exhaustive oracles.

Two objectives are supported: maximise the smallest triangle area
(``max-min-area``) and minimise the number of triangles of area at most
``sigma`` (``min-small-count``).  The searcher is multi-start simulated
annealing over barycentric coordinates followed by a compass-style pattern
search.  Each restart draws from its own stream seeded by
``(seed, restart)``, so results do not depend on how restarts are scheduled.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .geometry import project_to_triangle, triple_areas, uniform_bary
from .objectives import (Configuration, evaluate, fig13_construction, min_area, small_count,
                         triples_index)
from .partition import lattice_nodes

MAX_MIN = "max-min-area"
MIN_COUNT = "min-small-count"
OBJECTIVES = (MAX_MIN, MIN_COUNT)
BRUTE_FORCE_BUDGET = 10 ** 9

# lattice directions e_a - e_b; moving along them keeps the weights summing to 1
_DIRECTIONS = np.array([[1, -1, 0], [-1, 1, 0], [1, 0, -1], [-1, 0, 1], [0, 1, -1], [0, -1, 1]], float)


@dataclass
class SearchParams:
    n: int = 5
    objective: str = MAX_MIN
    restarts: int = 20
    seed: int = 0
    max_iters: int = 600
    init_temp: float = 0.05
    cooling: float = 0.995
    step_scale: float = 0.1
    tolerance: float = 1e-9
    sigma: Optional[float] = None

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError(f"unknown objective {self.objective!r}")
        if self.n < 3:
            raise ValueError("n must be at least 3")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if not 0 < self.cooling < 1:
            raise ValueError("cooling must lie in (0, 1)")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.init_temp <= 0 or self.step_scale <= 0:
            raise ValueError("init_temp and step_scale must be positive")
        if self.seed < 0 or self.seed >= 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.objective == MIN_COUNT and (self.sigma is None or self.sigma <= 0):
            raise ValueError("min-small-count needs a positive sigma")


@dataclass
class SearchResult:
    best_config: Configuration
    best_value: float
    per_restart: list
    evaluations: int
    objective: str
    params: Optional[SearchParams] = None
    exact_value: Optional[Fraction] = None

    def to_dict(self) -> dict:
        pts = [[float(w) for w in p] for p in self.best_config.points]
        out = {
            "schema_version": 1,
            "objective": self.objective,
            "params": asdict(self.params) if self.params is not None else None,
            "best_value": float(self.best_value),
            "best_config": pts,
            "evaluations": int(self.evaluations),
            "per_restart": self.per_restart,
        }
        if self.exact_value is not None:
            out["best_value_exact"] = str(self.exact_value)
            out["best_config_exact"] = [[str(Fraction(w)) for w in p] for p in self.best_config.points]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


# -- energies -------------------------------------------------------------

class _Energy:
    """Incremental energy of a configuration; lower is better."""

    def __init__(self, n: int, objective: str, sigma: Optional[float]):
        self.idx = triples_index(n)
        self.objective = objective
        self.sigma = sigma
        self.touch = [np.flatnonzero((self.idx == i).any(axis=1)) for i in range(n)]
        self.other = []
        for i, t in enumerate(self.touch):
            rest = np.array([[j for j in row if j != i] for row in self.idx[t]], dtype=np.intp)
            self.other.append((rest[:, 0], rest[:, 1]))
        if objective == MIN_COUNT:
            # the tie-break term stays strictly below one count
            self.scale = 1.0 / (len(self.idx) * sigma + 1.0)

    def areas(self, x: np.ndarray) -> np.ndarray:
        return triple_areas(x, self.idx)

    def update(self, areas: np.ndarray, x: np.ndarray, i: int) -> np.ndarray:
        """Areas after point ``i`` of ``x`` moved (only its triples are recomputed)."""
        out = areas.copy()
        t, J, K = self.touch[i], self.other[i][0], self.other[i][1]
        p = x[i]
        out[t] = np.abs((x[J, 1] - p[1]) * (x[K, 2] - p[2]) - (x[J, 2] - p[2]) * (x[K, 1] - p[1]))
        return out

    def __call__(self, areas: np.ndarray) -> float:
        if self.objective == MAX_MIN:
            return -float(areas.min())
        small = areas <= self.sigma
        return float(small.sum()) - self.scale * float(areas[small].sum())

    def value(self, areas: np.ndarray):
        if self.objective == MAX_MIN:
            return float(areas.min())
        return int((areas <= self.sigma).sum())


def _project_point(w: np.ndarray) -> np.ndarray:
    w = np.maximum(w, 0.0)
    return w / w.sum()


def _anneal(x: np.ndarray, energy: _Energy, p: SearchParams, rng: np.random.Generator):
    n = len(x)
    areas = energy.areas(x)
    e = energy(areas)
    best_x, best_e = x.copy(), e
    temp = p.init_temp
    evals = 1
    for _ in range(p.max_iters):
        step = max(p.step_scale * math.sqrt(temp / p.init_temp), 1e-4)
        which = rng.integers(n, size=n)
        moves = rng.normal(size=(n, 3)) * step
        moves -= moves.mean(axis=1, keepdims=True)
        coins = rng.random(n)
        for i, d, u in zip(which.tolist(), moves, coins.tolist()):
            cand = x.copy()
            cand[i] = _project_point(x[i] + d)
            new_areas = energy.update(areas, cand, i)
            ne = energy(new_areas)
            evals += 1
            if ne <= e or u < math.exp(-(ne - e) / temp):
                x, areas, e = cand, new_areas, ne
                if e < best_e:
                    best_x, best_e = x.copy(), e
        temp *= p.cooling
    return best_x, best_e, evals


def _polish(x: np.ndarray, energy: _Energy, tol: float, h0: float = 0.01, max_evals: int = 200_000):
    """Compass search along the six lattice directions of each point; accepts strict gains only."""
    areas = energy.areas(x)
    e = energy(areas)
    h = h0
    evals = 0
    while h >= tol and evals < max_evals:
        improved = False
        for i in range(len(x)):
            for d in _DIRECTIONS:
                cand = x.copy()
                cand[i] = _project_point(x[i] + h * d)
                new_areas = energy.update(areas, cand, i)
                ne = energy(new_areas)
                evals += 1
                if ne < e:
                    x, areas, e = cand, new_areas, ne
                    improved = True
        if not improved:
            h /= 2
    return x, e, evals


def _structured_inits(n: int) -> list:
    inits = []
    if n == 5:
        inits.append(("fig13", fig13_construction().as_array()))
    anchors = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1],
                        [.5, .5, 0], [.5, 0, .5], [0, .5, .5], [1 / 3, 1 / 3, 1 / 3]], float)
    if n <= len(anchors):
        inits.append(("vertices+midpoints", anchors[:n].copy()))
    return inits


def _run(params: SearchParams, initial: Sequence = ()) -> SearchResult:
    energy = _Energy(params.n, params.objective, params.sigma)
    inits = [(f"given[{j}]", np.asarray(Configuration(tuple(c.points)).as_array()))
             for j, c in enumerate(initial)] + _structured_inits(params.n)
    per_restart = []
    best = None
    evaluations = 0
    for r in range(params.restarts):
        rng = np.random.default_rng([params.seed, r])
        if r < len(inits):
            kind, x0 = inits[r]
            if x0.shape != (params.n, 3):
                raise ValueError(f"initial configuration {kind} has the wrong size")
        else:
            kind, x0 = "uniform", uniform_bary(rng, params.n)
        x, _, ev1 = _anneal(x0.copy(), energy, params, rng)
        x, _, ev2 = _polish(x, energy, params.tolerance)
        evaluations += ev1 + ev2
        value = energy.value(energy.areas(x))
        key = energy(energy.areas(x))
        per_restart.append({"restart": r, "seed": [params.seed, r], "init": kind, "value": value})
        if best is None or key < best[0]:
            best = (key, x, value)
    _, x, value = best
    config = Configuration.from_array(x)
    # report the value of the configuration actually returned
    rep = evaluate(config, thresholds=(params.sigma,) if params.sigma else ())
    if params.objective == MAX_MIN:
        value = float(rep.min_area)
    else:
        value = int(rep.count_at_most[params.sigma])
    return SearchResult(config, value, per_restart, evaluations, params.objective, params)


def maximize_min_area(params: SearchParams, initial: Sequence = ()) -> SearchResult:
    """Search for ``n`` points whose smallest triangle is as large as possible.

    ``initial`` configurations are used for the first restarts, followed by
    the structured seeds and then uniform random starts.
    """
    if params.objective != MAX_MIN:
        raise ValueError("params.objective must be max-min-area")
    return _run(params, initial)


def minimize_small_count(params: SearchParams, sigma: Optional[float] = None,
                         initial: Sequence = ()) -> SearchResult:
    """Search for ``n`` points forming as few triangles of area ``<= sigma`` as possible.

    Among equal counts the search prefers configurations whose small
    triangles are larger in total, which steers it towards removing one.
    """
    if sigma is not None:
        params = SearchParams(**{**asdict(params), "objective": MIN_COUNT, "sigma": sigma})
    if params.objective != MIN_COUNT:
        raise ValueError("params.objective must be min-small-count")
    return _run(params, initial)


# -- exhaustive lattice oracle ----------------------------------------------------

def brute_force_cost(k: int, n: int) -> int:
    N = (k + 1) * (k + 2) // 2
    return math.comb(N, n) * math.comb(n, 3)


def lattice_brute_force(k: int, n: int, objective: str = MAX_MIN, sigma: Optional[float] = None,
                        chunk: int = 200_000) -> SearchResult:
    """Exact optimum over all ``n``-subsets of the order-``k`` lattice of T.

    Areas are handled as integers (``area * k**2``), so the reported value is
    exact.  Ties go to the lexicographically first subset.
    """
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    if objective == MIN_COUNT and (sigma is None or sigma <= 0):
        raise ValueError("min-small-count needs a positive sigma")
    if k < 1 or n < 3:
        raise ValueError("need k >= 1 and n >= 3")
    cost = brute_force_cost(k, n)
    if cost > BRUTE_FORCE_BUDGET:
        raise ValueError(f"lattice search would evaluate ~{cost:.3g} triangles "
                         f"(budget {BRUTE_FORCE_BUDGET:.0e})")
    nodes = np.array(lattice_nodes(k), dtype=np.int64)
    N = len(nodes)
    if n > N:
        raise ValueError(f"the order-{k} lattice has only {N} nodes")
    P = nodes[:, None, None, :]
    Q = nodes[None, :, None, :]
    R = nodes[None, None, :, :]
    table = np.abs((Q[..., 1] - P[..., 1]) * (R[..., 2] - P[..., 2])
                   - (Q[..., 2] - P[..., 2]) * (R[..., 1] - P[..., 1]))
    tri = triples_index(n)
    thr = math.floor(sigma * k * k + 1e-12) if objective == MIN_COUNT else None

    best_key, best_subset, best_val = None, None, None
    combos = itertools.combinations(range(N), n)
    total = math.comb(N, n)
    done = 0
    while done < total:
        m = min(chunk, total - done)
        sub = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, m)),
                          dtype=np.int64, count=m * n).reshape(m, n)
        areas = table[sub[:, tri[:, 0]], sub[:, tri[:, 1]], sub[:, tri[:, 2]]]
        if objective == MAX_MIN:
            vals = areas.min(axis=1)
            j = int(np.argmax(vals))
            key = -int(vals[j])
        else:
            vals = (areas <= thr).sum(axis=1)
            j = int(np.argmin(vals))
            key = int(vals[j])
        if best_key is None or key < best_key:
            best_key, best_subset, best_val = key, sub[j].copy(), int(vals[j])
        done += m

    config = Configuration(tuple(tuple(Fraction(int(w), k) for w in nodes[i]) for i in best_subset))
    if objective == MAX_MIN:
        exact = Fraction(best_val, k * k)
        value = float(exact)
    else:
        exact = Fraction(best_val)
        value = best_val
    return SearchResult(config, value, [{"restart": 0, "seed": None, "init": f"lattice k={k}",
                                         "value": value}],
                        total * len(tri), objective, None, exact)


# -- random falsification -------------------------------------------------------------

@dataclass
class FalsificationReport:
    trials: int
    n: int
    sigma: float
    violations: int
    max_min_area: float
    worst: Configuration
    min_small_count: int
    fewest_small: Configuration

    def to_dict(self) -> dict:
        return {
            "trials": self.trials, "n": self.n, "sigma": self.sigma,
            "violations": self.violations, "max_min_area": self.max_min_area,
            "worst": [[float(w) for w in p] for p in self.worst.points],
            "min_small_count": self.min_small_count,
            "fewest_small": [[float(w) for w in p] for p in self.fewest_small.points],
        }


def random_falsification(trials: int, n: int = 5, sigma: float = 0.24, seed: int = 0,
                         chunk: int = 50_000) -> FalsificationReport:
    """Uniform random configurations; a violation is one whose every triangle exceeds ``sigma``."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = np.random.default_rng(seed)
    idx = triples_index(n)
    violations = 0
    best_min, worst = -1.0, None
    best_cnt, fewest = None, None
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        pts = uniform_bary(rng, (m, n))
        areas = triple_areas(pts, idx)
        mins = areas.min(axis=1)
        cnt = (areas <= sigma).sum(axis=1)
        violations += int((mins > sigma).sum())
        j = int(np.argmax(mins))
        if mins[j] > best_min:
            best_min, worst = float(mins[j]), pts[j]
        j = int(np.argmin(cnt))
        if best_cnt is None or cnt[j] < best_cnt:
            best_cnt, fewest = int(cnt[j]), pts[j]
        done += m
    return FalsificationReport(trials, n, sigma, violations, best_min,
                               Configuration.from_array(worst), best_cnt,
                               Configuration.from_array(fewest))
