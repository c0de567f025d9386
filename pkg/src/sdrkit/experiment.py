"""Seeded batch runs: generate, solve, cross-check with the oracle, write CSV.

A spec is a JSON object::

    {"name": "hv-small", "family": "random_two_sweep", "algorithm": "two-sweep",
     "grid": {"n": [2, 3]}, "parameters": {"span": 5}, "oracle": true}

``grid`` values are expanded as a cartesian product and merged over the fixed
``parameters``; an explicit ``points`` list of parameter dicts may be given
instead. Every (grid point, trial) pair gets its own seed derived from
the master seed, so rows do not depend on execution order or worker count.
"""
from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from itertools import product
from pathlib import Path
from typing import List, Optional

from . import search
from .errors import BudgetExceededError, SdrError
from .generators import GenSpec, generate
from .model import is_sdr, max_sdr_search
from .solvers import ALGORITHMS, CONSTRUCTIVE, solve

COLUMNS = ("experiment", "family", "parameters", "trial", "seed", "algorithm", "n",
           "sdr_size", "verified", "oracle_size", "node_count", "agreement", "status", "error")
TIMING_COLUMN = "wall_time_ms"


@dataclass
class ExperimentRecord:
    experiment: str
    spec: GenSpec
    trial: int
    algorithm: str
    n: Optional[int] = None
    sdr_size: Optional[int] = None
    verified: Optional[bool] = None
    oracle_size: Optional[int] = None
    node_count: Optional[int] = None
    agreement: bool = False
    status: str = "ok"
    error: str = ""
    wall_time_ms: Optional[float] = field(default=None, compare=False)

    def row(self, timing: bool = False):
        out = {
            "experiment": self.experiment,
            "family": self.spec.family,
            "parameters": json.dumps(self.spec.parameters, sort_keys=True, separators=(",", ":")),
            "trial": self.trial,
            "seed": self.spec.seed,
            "algorithm": self.algorithm,
            "n": self.n,
            "sdr_size": self.sdr_size,
            "verified": self.verified,
            "oracle_size": self.oracle_size,
            "node_count": self.node_count,
            "agreement": self.agreement,
            "status": self.status,
            "error": self.error,
        }
        if timing:
            out[TIMING_COLUMN] = None if self.wall_time_ms is None else f"{self.wall_time_ms:.3f}"
        return {k: ("" if v is None else str(v).lower() if isinstance(v, bool) else v)
                for k, v in out.items()}


def trial_seed(master: int, family: str, params: dict, trial: int) -> int:
    key = f"{master}:{family}:{json.dumps(params, sort_keys=True)}:{trial}"
    return random.Random(key).getrandbits(31)


def expand(spec: dict, trials: int, seed: int):
    """(GenSpec, trial) for every grid point and trial, in a fixed order."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    fixed = dict(spec.get("parameters", {}))
    if "points" in spec:
        points = [dict(p) for p in spec["points"]]
    else:
        grid = spec.get("grid", {})
        keys = sorted(grid)
        points = [dict(zip(keys, values)) for values in product(*(grid[k] for k in keys))]
    out = []
    for point in points:
        params = {**fixed, **point}
        for trial in range(trials):
            out.append((GenSpec(spec["family"], params,
                                trial_seed(seed, spec["family"], params, trial)), trial))
    return out


def run_trial(name: str, gspec: GenSpec, trial: int, algorithm: str, oracle: bool = True,
              node_budget: Optional[int] = None, m: Optional[int] = None) -> ExperimentRecord:
    rec = ExperimentRecord(name, gspec, trial, algorithm)
    start = time.perf_counter()
    try:
        inst = generate(gspec)
    except SdrError as e:
        rec.status, rec.error = "generation-failed", str(e)
        return rec
    rec.n = inst.n
    try:
        solved = solve(inst, algorithm, m=m, node_budget=node_budget)
        rec.sdr_size = len(solved.assignment)
        rec.verified = is_sdr(inst, solved.assignment)
        rec.node_count = solved.nodes
        if algorithm == "oracle":
            rec.oracle_size = rec.sdr_size
    except BudgetExceededError as e:
        rec.status, rec.error = "budget-exceeded", str(e)
    except SdrError as e:
        rec.status, rec.error = "precondition" if isinstance(e, ValueError) else "failed", str(e)
    if oracle and rec.oracle_size is None and rec.status == "ok":
        try:
            res = max_sdr_search(inst, node_budget=node_budget)
            rec.oracle_size, rec.node_count = res.size, res.nodes
        except BudgetExceededError as e:
            rec.status, rec.error = "oracle-budget-exceeded", str(e)
    rec.wall_time_ms = (time.perf_counter() - start) * 1000
    rec.agreement = _agreement(rec)
    return rec


def _agreement(rec: ExperimentRecord) -> bool:
    if rec.status != "ok" or not rec.verified:
        return False
    if rec.algorithm in CONSTRUCTIVE:
        return rec.sdr_size >= rec.n
    if rec.algorithm == "rainbow" and rec.oracle_size is not None:
        return (rec.sdr_size >= rec.n) == (rec.oracle_size >= rec.n)
    return rec.oracle_size is None or rec.sdr_size == rec.oracle_size


def _run_packed(args):
    return run_trial(*args)


def run_experiment(spec: dict, trials: int, seed: int, workers: int = 1) -> List[ExperimentRecord]:
    algorithm = spec.get("algorithm", "oracle")
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    name = spec.get("name", spec["family"])
    jobs = [(name, g, t, algorithm, spec.get("oracle", True), spec.get("node_budget"), spec.get("m"))
            for g, t in expand(spec, trials, seed)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_packed, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_run_packed(j) for j in jobs]


def records_to_csv(records, timing: bool = False) -> str:
    cols = list(COLUMNS) + ([TIMING_COLUMN] if timing else [])
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow(r.row(timing))
    return buf.getvalue()


def write_results(records, spec: dict, out_dir, trials: int, seed: int, timing: bool = False):
    """results/<name>/<timestamp>.csv plus <timestamp>.manifest.json."""
    name = spec.get("name", spec["family"])
    stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S%fZ")
    target = Path(out_dir) / name
    target.mkdir(parents=True, exist_ok=True)
    csv_path = target / f"{stamp}.csv"
    csv_path.write_text(records_to_csv(records, timing), encoding="utf-8")
    manifest = {
        "spec": spec, "trials": trials, "seed": seed, "rows": len(records),
        "columns": list(COLUMNS) + ([TIMING_COLUMN] if timing else []),
        "kernel": search.BACKEND, "csv": csv_path.name,
        "agreement": sum(r.agreement for r in records),
    }
    man_path = target / f"{stamp}.manifest.json"
    man_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return csv_path, man_path

