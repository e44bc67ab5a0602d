"""Benchmark harness: seeded instance sweeps, per-run CSV rows and per-cell summaries."""
from __future__ import annotations

import csv
import math
import statistics
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from math import comb
from typing import Iterable, Optional

from .errors import GenerationFailed, SolverFailure, TooLarge
from .exact import exact_bfs_solve
from .instance import Instance, plan_metrics, sample_random_instance
from .lacam import iu_lacam_solve
from .pibt import run_pibt

ALGORITHMS = ("pibt", "lacam", "exact")
EXACT_CONFIG_BUDGET = 4096


@dataclass
class RunRecord:
    map: str
    n: int
    r: int
    seed: int
    algo: str
    solved: bool
    time_ms: float
    makespan: Optional[int] = None
    lower_bound: Optional[int] = None
    suboptimality: Optional[float] = None

    @classmethod
    def columns(cls) -> list:
        return [f.name for f in fields(cls)]

    def row(self) -> list:
        out = []
        for value in asdict(self).values():
            if value is None:
                out.append("")
            elif isinstance(value, bool):
                out.append(str(value).lower())
            elif isinstance(value, float):
                out.append(f"{value:.3f}" if math.isfinite(value) else str(value))
            else:
                out.append(str(value))
        return out


@dataclass(frozen=True)
class BenchConfig:
    timeout: float = 60.0
    livelock_depth: int = 2
    exact_budget: int = EXACT_CONFIG_BUDGET


def cell_seed(map_name: str, n: int, r: int, index: int) -> int:
    """Stable per-instance seed, independent of sweep order."""
    return zlib.crc32(f"{map_name}|{n}|{r}|{index}".encode())


def solve(instance: Instance, algo: str, config: BenchConfig = BenchConfig()) -> list:
    """Dispatch to a planner; raises a SolverFailure subclass when no plan comes back."""
    if algo == "lacam":
        return iu_lacam_solve(instance, timeout=config.timeout, livelock_depth=config.livelock_depth)
    if algo == "pibt":
        budget = 10 * instance.n * instance.graph.vertex_count
        return run_pibt(instance, max_steps=budget, timeout=config.timeout)
    if algo == "exact":
        size = comb(instance.graph.vertex_count, instance.n)
        if size > config.exact_budget:
            raise TooLarge(f"{size} configurations exceed the budget of {config.exact_budget}")
        return exact_bfs_solve(instance)
    raise ValueError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")


def run_one(instance: Instance, map_name: str, seed: int, algo: str,
            config: BenchConfig = BenchConfig()) -> tuple:
    """Solve and measure; returns ``(RunRecord, plan or None, failure reason or None)``."""
    start = time.perf_counter()
    try:
        plan = solve(instance, algo, config)
    except SolverFailure as exc:
        elapsed = (time.perf_counter() - start) * 1000
        return RunRecord(map_name, instance.n, instance.radius, seed, algo, False, elapsed), None, exc.reason
    elapsed = (time.perf_counter() - start) * 1000
    m = plan_metrics(instance, plan)
    rec = RunRecord(map_name, instance.n, instance.radius, seed, algo, True, elapsed,
                    m.makespan, m.lower_bound, m.suboptimality)
    return rec, plan, None


def _task(args) -> RunRecord:
    graph, map_name, n, r, seed, algo, config = args
    try:
        instance = sample_random_instance(graph, n, r, seed)
    except GenerationFailed:
        return RunRecord(map_name, n, r, seed, algo, False, 0.0)
    return run_one(instance, map_name, seed, algo, config)[0]


def sweep(maps: dict, ns: Iterable[int], rs: Iterable[int], instances: int,
          algos: Iterable[str], config: BenchConfig = BenchConfig(), jobs: int = 1) -> list:
    """Run every (map, n, r, index, algo) combination; rows come back in sweep order."""
    tasks = []
    for map_name, graph in maps.items():
        for n in ns:
            for r in rs:
                for k in range(instances):
                    seed = cell_seed(map_name, n, r, k)
                    for algo in algos:
                        tasks.append((graph, map_name, n, r, seed, algo, config))
    if jobs <= 1 or len(tasks) <= 1:
        return [_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_task, tasks, chunksize=4))


@dataclass
class CellSummary:
    map: str
    n: int
    r: int
    algo: str
    runs: int
    rate: float            # percent solved
    mean_time_s: Optional[float]
    mean_makespan: Optional[float]
    makespan_ci95: Optional[float]


def summarize(records: list) -> list:
    """Per-cell success rate and means over solved runs only."""
    cells: dict = {}
    for rec in records:
        cells.setdefault((rec.map, rec.n, rec.r, rec.algo), []).append(rec)
    out = []
    for (map_name, n, r, algo), recs in cells.items():
        solved = [x for x in recs if x.solved]
        spans = [x.makespan for x in solved]
        mean_t = statistics.fmean(x.time_ms for x in solved) / 1000 if solved else None
        mean_m = statistics.fmean(spans) if spans else None
        ci = 1.96 * statistics.stdev(spans) / math.sqrt(len(spans)) if len(spans) > 1 else None
        out.append(CellSummary(map_name, n, r, algo, len(recs), 100 * len(solved) / len(recs),
                               mean_t, mean_m, ci))
    return out


def write_records(path, records: list) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(RunRecord.columns())
        for rec in records:
            w.writerow(rec.row())


def read_records(path) -> list:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            opt = lambda key, cast: cast(row[key]) if row[key] else None
            out.append(RunRecord(row["map"], int(row["n"]), int(row["r"]), int(row["seed"]),
                                 row["algo"], row["solved"] == "true", float(row["time_ms"]),
                                 opt("makespan", int), opt("lower_bound", int),
                                 opt("suboptimality", float)))
    return out


def write_summary(path, summary: list) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f.name for f in fields(CellSummary)])
        for cell in summary:
            w.writerow(["" if v is None else (f"{v:.4f}" if isinstance(v, float) else v)
                        for v in asdict(cell).values()])


def format_summary(summary: list) -> str:
    lines = [f"{'map':<20} {'n':>4} {'r':>2} {'algo':<6} {'rate(%)':>8} {'time(s)':>9} {'makespan':>9}"]
    for c in summary:
        t = "-" if c.mean_time_s is None else f"{c.mean_time_s:.3f}"
        m = "-" if c.mean_makespan is None else f"{c.mean_makespan:.1f}"
        if c.makespan_ci95 is not None:
            m += f"±{c.makespan_ci95:.1f}"
        lines.append(f"{c.map:<20} {c.n:>4} {c.r:>2} {c.algo:<6} {c.rate:>8.1f} {t:>9} {m:>9}")
    return "\n".join(lines)
