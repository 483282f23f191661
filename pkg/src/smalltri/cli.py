"""Command-line front end.

Every randomized command takes ``--seed`` (default :data:`DEFAULT_SEED`), so
the same arguments always give byte-identical output files.  Exit status is
0 on success, 1 when a verification fails or an output cannot be written,
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import verify as verify_mod
from .lemma_lab import scan_lemma
from .objectives import (Configuration, clustered_construction, evaluate, fig13_construction,
                         format_configuration, load_configuration, vertices_and_centroid)
from .partition import load_regions
from .render import render_svg
from .search import MAX_MIN, MIN_COUNT, OBJECTIVES, SearchParams, maximize_min_area, minimize_small_count

DEFAULT_SEED = 20240601
COMMANDS = ("lemma-scan", "verify", "search", "construct", "render", "report")
CONSTRUCTIONS = ("fig13", "clustered", "vertices-centroid")
FORMATS = ("json", "csv", "svg", "text")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = DEFAULT_SEED
    out: Optional[str] = None
    format: Optional[str] = None
    n: int = 5
    sigma: Optional[float] = None
    trials: int = 100_000
    restarts: int = 20
    k: int = 3
    step: float = 1e-5
    objective: str = MAX_MIN
    suite: str = "all"
    max_iters: int = 600
    points: Optional[str] = None
    construction: Optional[str] = None
    eps: float = 0.0
    regions: list = field(default_factory=list)
    grid: int = 0

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        """Build from a JSON-style mapping; unknown or mistyped keys raise :class:`UsageError`."""
        known = {f.name: f for f in fields(cls)}
        for key in data:
            if key not in known:
                raise UsageError(f"unknown config key {key!r}")
        if "command" not in data:
            raise UsageError("config key 'command' is required")
        types = {"seed": int, "n": int, "trials": int, "restarts": int, "k": int, "max_iters": int,
                 "grid": int, "step": float, "eps": float, "sigma": float,
                 "command": str, "out": str, "format": str, "objective": str, "suite": str,
                 "points": str, "construction": str, "regions": list}
        for key, val in data.items():
            want = types[key]
            ok = (val is None and key in ("out", "format", "sigma", "points", "construction")) or (
                isinstance(val, want) and not (want is int and isinstance(val, bool))) or (
                want is float and isinstance(val, int) and not isinstance(val, bool))
            if not ok:
                raise UsageError(f"config key {key!r} has invalid value {val!r}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"config key 'command': unknown command {self.command!r}")
        if self.format is not None and self.format not in FORMATS:
            raise UsageError(f"config key 'format': unknown format {self.format!r}")
        if self.objective not in OBJECTIVES:
            raise UsageError(f"config key 'objective': unknown objective {self.objective!r}")
        if self.suite != "all" and self.suite not in verify_mod.SUITES:
            raise UsageError(f"config key 'suite': unknown suite {self.suite!r}")
        if self.construction is not None and self.construction not in CONSTRUCTIONS:
            raise UsageError(f"config key 'construction': unknown construction {self.construction!r}")
        if not 0 <= self.seed < 2 ** 63:
            raise UsageError("config key 'seed': must be a non-negative integer")
        for key in ("n", "trials", "restarts", "k", "max_iters"):
            if getattr(self, key) < 1:
                raise UsageError(f"config key {key!r}: must be positive")
        if self.grid < 0:
            raise UsageError("config key 'grid': must be non-negative")


# -- output ------------------------------------------------------------------

def atomic_write(path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file in the same directory."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent if str(path.parent) else ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        mask = os.umask(0)
        os.umask(mask)
        os.chmod(tmp, 0o666 & ~mask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(cfg: RunConfig, text: str, path: Optional[str] = None) -> None:
    path = path if path is not None else cfg.out
    if path is None:
        sys.stdout.write(text)
    else:
        atomic_write(path, text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


# -- commands --------------------------------------------------------------------

def _configuration(cfg: RunConfig) -> Configuration:
    if cfg.points and cfg.construction:
        raise UsageError("give either a points file or a construction, not both")
    if cfg.points:
        try:
            return load_configuration(cfg.points)
        except OSError as exc:
            raise UsageError(f"cannot read points file: {exc}") from None
        except ValueError as exc:
            raise UsageError(f"{cfg.points}: {exc}") from None
    name = cfg.construction or "fig13"
    if name == "fig13":
        return fig13_construction()
    if name == "vertices-centroid":
        return vertices_and_centroid()
    try:
        return clustered_construction(cfg.k, cfg.eps, cfg.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_lemma_scan(cfg: RunConfig) -> int:
    try:
        rep = scan_lemma(cfg.step)
    except ValueError as exc:
        raise UsageError(f"config key 'step': {exc}") from None
    stem = cfg.out or "lemma_scan"
    if stem.endswith((".csv", ".json")):
        stem = stem.rsplit(".", 1)[0]
    if cfg.format in (None, "csv"):
        atomic_write(stem + ".csv", rep.to_csv())
    if cfg.format in (None, "json"):
        atomic_write(stem + ".json", rep.to_json())
    s = rep.summary()
    print(f"max |I| = {s['max_region_area']:.6f} at A = {s['argmax_angle']:.5f} "
          f"over {s['grid_points']} points: {'PASS' if rep.passed else 'FAIL'}", file=sys.stderr)
    return 0 if rep.passed else 1


def _cmd_verify(cfg: RunConfig) -> int:
    results = verify_mod.run_suite(cfg.suite, cfg.trials, cfg.seed)
    passed = all(c.passed for checks in results.values() for c in checks)
    doc = {"schema_version": 1, "suite": cfg.suite, "trials": cfg.trials, "seed": cfg.seed,
           "passed": passed,
           "suites": {k: [asdict(c) for c in v] for k, v in results.items()}}
    for name, checks in results.items():
        for c in checks:
            print(f"[{'PASS' if c.passed else 'FAIL'}] {name}: {c.name}  {c.detail}", file=sys.stderr)
    _emit(cfg, _dumps(doc))
    return 0 if passed else 1


def _cmd_search(cfg: RunConfig) -> int:
    sigma = cfg.sigma
    if cfg.objective == MIN_COUNT and sigma is None:
        sigma = 0.25 + 1e-9
    try:
        params = SearchParams(n=cfg.n, objective=cfg.objective, restarts=cfg.restarts, seed=cfg.seed,
                              max_iters=cfg.max_iters, sigma=sigma)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = maximize_min_area(params) if cfg.objective == MAX_MIN else minimize_small_count(params)
    _emit(cfg, res.to_json())
    return 0


def _cmd_construct(cfg: RunConfig) -> int:
    conf = _configuration(cfg)
    fmt = cfg.format or "text"
    if fmt == "json":
        text = _dumps({"schema_version": 1, "construction": cfg.construction or "fig13",
                       "points": [[w if isinstance(w, Fraction) else float(w) for w in p] for p in conf.points]})
    elif fmt == "text":
        text = format_configuration(conf, cfg.construction or "fig13")
    else:
        raise UsageError(f"config key 'format': construct writes json or text, not {fmt}")
    _emit(cfg, text)
    return 0


def _cmd_render(cfg: RunConfig) -> int:
    conf = _configuration(cfg)
    regions = []
    for path in cfg.regions:
        try:
            regions.extend(load_regions(path).values())
        except OSError as exc:
            raise UsageError(f"cannot read regions file: {exc}") from None
        except ValueError as exc:
            raise UsageError(f"{path}: {exc}") from None
    labels = None
    if cfg.construction in (None, "fig13") and not cfg.points:
        labels = ("a", "b", "c", "d", "e")
    _emit(cfg, render_svg(conf, regions, cfg.grid, labels))
    return 0


def _cmd_report(cfg: RunConfig) -> int:
    conf = _configuration(cfg)
    thresholds = (Fraction(1, 4), Fraction(6, 25)) if cfg.sigma is None else (cfg.sigma,)
    rep = evaluate(conf, thresholds)

    def num(v):
        return str(v) if isinstance(v, Fraction) else float(v)

    doc = {
        "schema_version": 1,
        "n": conf.n,
        "exact": conf.is_exact,
        "min_area": num(rep.min_area),
        "min_triple": list(rep.min_triple),
        "counts": [{"sigma": num(s), "count": int(c)} for s, c in rep.count_at_most.items()],
        "triples": [{"triple": list(t), "area": num(a)} for t, a in zip(rep.triples, rep.areas)],
    }
    if cfg.format == "csv":
        rows = ["i,j,l,area"] + [f"{t[0]},{t[1]},{t[2]},{num(a)}" for t, a in zip(rep.triples, rep.areas)]
        _emit(cfg, "\n".join(rows) + "\n")
    else:
        _emit(cfg, _dumps(doc))
    return 0


_DISPATCH = {
    "lemma-scan": _cmd_lemma_scan, "verify": _cmd_verify, "search": _cmd_search,
    "construct": _cmd_construct, "render": _cmd_render, "report": _cmd_report,
}


def run(cfg: RunConfig) -> int:
    """Execute one command and return its exit status."""
    try:
        cfg.validate()
        return _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 1


# -- argument parsing --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="smalltri", description="Small triangles among points in a triangle.")
    p.add_argument("--config", dest="run_config", metavar="FILE",
                   help="read the whole run configuration from a JSON file")
    sub = p.add_subparsers(dest="command")

    def common(sp, out_help="output file (default: stdout)"):
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})")
        sp.add_argument("--out", help=out_help)
        sp.add_argument("--format", choices=FORMATS)

    def source(sp):
        sp.add_argument("--points", help="configuration file, one 'l1 l2 l3' line per point")
        sp.add_argument("--construction", choices=CONSTRUCTIONS)
        sp.add_argument("--k", type=int, default=3, help="points per cluster for 'clustered'")
        sp.add_argument("--eps", type=float, default=0.0, help="cluster radius for 'clustered'")

    sp = sub.add_parser("lemma-scan", help="tabulate the corner-region area over the angle range")
    common(sp, "output stem; writes STEM.csv and STEM.json (default lemma_scan)")
    sp.add_argument("--step", type=float, default=1e-5)

    sp = sub.add_parser("verify", help="run property suites")
    common(sp)
    sp.add_argument("--suite", default="all", choices=("all",) + verify_mod.SUITES)
    sp.add_argument("--trials", type=int, default=100_000)

    sp = sub.add_parser("search", help="search for extremal configurations")
    common(sp)
    sp.add_argument("--objective", default=MAX_MIN, choices=OBJECTIVES)
    sp.add_argument("--n", type=int, default=5)
    sp.add_argument("--sigma", type=float, help="small-triangle threshold (default 1/4 + 1e-9)")
    sp.add_argument("--restarts", type=int, default=20)
    sp.add_argument("--max-iters", type=int, default=600)

    sp = sub.add_parser("construct", help="write an explicit construction")
    common(sp)
    source(sp)

    sp = sub.add_parser("render", help="draw a configuration as SVG")
    common(sp)
    source(sp)
    sp.add_argument("--regions", action="append", default=[], help="region file to shade (repeatable)")
    sp.add_argument("--grid", type=int, nargs="?", const=10, default=0, help="draw the order-K grid (default 10)")

    sp = sub.add_parser("report", help="list every triangle area of a configuration")
    common(sp)
    source(sp)
    sp.add_argument("--sigma", type=float, help="threshold (default: both 1/4 and 6/25)")
    return p


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    data = {k: v for k, v in vars(ns).items() if k != "run_config"}
    return RunConfig(**data)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.run_config:
        if ns.command:
            parser.error("--config cannot be combined with a command")
        try:
            data = json.loads(Path(ns.run_config).read_text())
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 2
        except json.JSONDecodeError as exc:
            print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
            return 2
        if not isinstance(data, dict):
            print("error: config must be a JSON object", file=sys.stderr)
            return 2
        try:
            cfg = RunConfig.from_mapping(data)
        except UsageError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        return run(cfg)
    if not ns.command:
        parser.print_usage(sys.stderr)
        return 2
    return run(_config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
