"""Experiment sweeps, CSV reports and log-log exponent fits."""
from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .coloring import FragmentationRun, hamming_cube_edge_coloring, layer_coloring, t_color_via_separators
from .exact import exact_mcc
from .generators import Instance, InstanceSpec, build_instance
from .graph import max_mono_component
from .separators import FallbackProvider, PlanarProvider, SeparatorProfile, TreewidthProvider

THREADS_ENV = "MCC_THREADS"

COLUMNS = ["family", "params", "seed", "n", "m", "algorithm", "provider", "t",
           "max_component", "S", "n0", "certificate_valid", "exact", "nodes"]
RUN_COLUMNS = ["n", "t", "gamma", "K", "n0", "S", "per_color_max", "time_ms"]
ALGORITHMS = ("separator", "planar", "treewidth", "fallback", "exact", "layer", "hamming")


@dataclass
class ExperimentPlan:
    specs: list = field(default_factory=list)  # InstanceSpec
    algorithm: str = "separator"
    t: int = 2
    seeds: Sequence[int] | None = None  # overrides spec seeds when given
    output: str | None = None
    record_time: bool = False
    node_budget: int = 20_000_000

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.t < 1:
            raise ValueError("t must be positive")

    def expanded(self) -> list[InstanceSpec]:
        if self.seeds is None:
            out = list(self.specs)
        else:
            out = [InstanceSpec(s.family, s.params, seed) for s in self.specs for seed in self.seeds]
        return sorted(out, key=lambda s: (s.family, s.params, s.seed))


@dataclass
class ScalingFit:
    pairs: list
    exponent: float
    intercept: float
    residual: float


def pick_provider(inst: Instance, name: str = "separator"):
    if name == "separator":
        if inst.decomposition is not None:
            name = "treewidth"
        elif inst.planar and inst.graph.embedding is not None:
            name = "planar"
        else:
            name = "fallback"
    if name == "planar":
        return PlanarProvider()
    if name == "treewidth":
        if inst.decomposition is None:
            raise ValueError(f"{inst.spec.label()} has no tree decomposition")
        return TreewidthProvider(inst.decomposition)
    return FallbackProvider()


def run_instance(inst: Instance, algorithm: str, t: int, node_budget: int = 20_000_000,
                 profile: SeparatorProfile | None = None) -> dict:
    g = inst.graph
    row = {
        "family": inst.spec.family,
        "params": json.dumps(inst.spec.kw, sort_keys=True),
        "seed": inst.spec.seed,
        "n": g.n,
        "m": g.m,
        "algorithm": algorithm,
        "provider": "",
        "t": t,
        "S": "",
        "n0": "",
        "certificate_valid": "",
        "exact": "",
        "nodes": "",
    }
    start = time.monotonic()
    if algorithm == "exact":
        res = exact_mcc(g, t, node_budget)
        row.update(max_component=res.value, exact=int(res.exact), nodes=res.nodes_explored)
    elif algorithm == "layer":
        p = inst.spec.kw
        col = layer_coloring(int(p["d"]), int(p["m"]))
        row.update(max_component=max_mono_component(g, col).max_component_size)
    elif algorithm == "hamming":
        col = hamming_cube_edge_coloring(int(inst.spec.kw["d"]))
        row.update(max_component=max_mono_component(g, col).max_component_size)
    else:
        prov = pick_provider(inst, algorithm)
        run = t_color_via_separators(g, t, profile or prov.profile(), prov)
        report = max_mono_component(g, run.coloring)
        row.update(max_component=report.max_component_size, S=run.S, n0=run.n0,
                   provider=prov.name, certificate_valid=int(run.certificate_valid))
    row["time_ms"] = round((time.monotonic() - start) * 1000, 3)
    return row


def _run_one(args):
    spec, algorithm, t, budget = args
    return run_instance(build_instance(spec), algorithm, t, budget)


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def run_plan(plan: ExperimentPlan) -> list[dict]:
    """Run every (instance, seed) pair; rows come back in canonical order.

    Writes CSV to ``plan.output`` when set.  Without ``record_time`` the
    bytes depend only on the plan.
    """
    specs = plan.expanded()
    jobs = [(s, plan.algorithm, plan.t, plan.node_budget) for s in specs]
    workers = thread_count()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_one, jobs))
    else:
        rows = [_run_one(j) for j in jobs]
    if plan.output:
        with open(plan.output, "w", newline="") as fh:
            fh.write(rows_to_csv(rows, plan.record_time))
    return rows


def rows_to_csv(rows: Iterable[dict], record_time: bool = False) -> str:
    cols = COLUMNS + (["time_ms"] if record_time else [])
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _cell(r.get(k, "")) for k in cols})
    return buf.getvalue()


def _cell(x):
    if isinstance(x, float):
        return repr(x)
    return x


def read_csv(path: str) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def run_report(run: FragmentationRun, g, elapsed_ms: float | None = None) -> str:
    """One-row CSV block summarising a separator coloring run."""
    rep = max_mono_component(g, run.coloring)
    prof = run.profile
    row = {
        "n": g.n,
        "t": run.coloring.t,
        "gamma": str(prof.gamma) if prof else "",
        "K": str(prof.K) if prof else "",
        "n0": run.n0,
        "S": run.S,
        "per_color_max": " ".join(map(str, rep.per_color_max)),
        "time_ms": "" if elapsed_ms is None else f"{elapsed_ms:.3f}",
    }
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=RUN_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerow(row)
    return buf.getvalue()


def fit_exponent(table, x: str = "n", y: str = "max_component") -> ScalingFit:
    """Least-squares slope of log y against log x.

    ``table`` holds dict rows (CSV or :func:`run_plan` output) or
    ``(x, y)`` pairs.
    """
    pairs = []
    for row in table:
        if isinstance(row, dict):
            pairs.append((float(row[x]), float(row[y])))
        else:
            pairs.append((float(row[0]), float(row[1])))
    if len(pairs) < 3:
        raise ValueError("need at least three data points")
    if any(a <= 0 or b <= 0 for a, b in pairs):
        raise ValueError("log-log fit needs positive values")
    lx = np.log([a for a, _ in pairs])
    ly = np.log([b for _, b in pairs])
    if np.ptp(lx) == 0:
        raise ValueError("all x values coincide")
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = float(np.sqrt(np.mean((ly - (slope * lx + intercept)) ** 2)))
    if not math.isfinite(slope):
        raise ValueError("fit diverged")
    return ScalingFit(pairs, float(slope), float(intercept), resid)
