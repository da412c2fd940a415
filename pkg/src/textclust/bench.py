"""Repeated paired-seed clustering runs scored by entropy, written as CSV."""

from __future__ import annotations

import csv
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .evaluation import total_entropy
from .refinement import METHODS, cluster

log = logging.getLogger(__name__)

DEFAULT_K_VALUES = (10, 15, 20, 25)

TRIAL_COLUMNS = [
    "dataset", "method", "k", "trial", "rng_seed", "entropy", "final_t",
    "iterations", "moves", "converged", "error",
]
AGGREGATE_COLUMNS = ["dataset", "method", "k", "trials", "mean_entropy", "std_entropy"]


@dataclass(frozen=True)
class BenchConfig:
    dataset: str
    k_values: tuple[int, ...] = DEFAULT_K_VALUES
    trials: int = 10
    r: int | None = None
    base_seed: int = 0
    methods: tuple[str, ...] = METHODS
    max_iters: int = 500
    output: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.k_values or any(k < 2 for k in self.k_values):
            raise ValueError("k_values must be nonempty and every k at least 2")
        bad = set(self.methods) - set(METHODS)
        if bad or not self.methods:
            raise ValueError(f"unknown methods {sorted(bad)}; choose from {METHODS}")


@dataclass
class TrialRow:
    dataset: str
    method: str
    k: int
    trial: int
    rng_seed: int
    entropy: float = float("nan")
    final_t: float = float("nan")
    iterations: int = 0
    moves: int = 0
    converged: bool = False
    error: str = ""
    wall_time_ms: float = 0.0


@dataclass
class AggregateRow:
    dataset: str
    method: str
    k: int
    trials: int
    mean_entropy: float
    std_entropy: float


@dataclass
class BenchResult:
    rows: list[TrialRow]
    aggregates: list[AggregateRow] = field(default_factory=list)

    @property
    def failed(self) -> list[TrialRow]:
        return [r for r in self.rows if r.error]

    def mean(self, method: str, k: int) -> float:
        for a in self.aggregates:
            if a.method == method and a.k == k:
                return a.mean_entropy
        raise KeyError((method, k))


def aggregate(rows: Sequence[TrialRow]) -> list[AggregateRow]:
    """Mean and population std of entropy per (dataset, method, k), failures excluded."""
    groups: dict[tuple[str, str, int], list[float]] = {}
    for r in rows:
        key = (r.dataset, r.method, r.k)
        groups.setdefault(key, [])
        if not r.error:
            groups[key].append(r.entropy)
    out = []
    for (ds, method, k), vals in groups.items():
        arr = np.array(vals)
        mean = float(arr.mean()) if arr.size else float("nan")
        std = float(arr.std()) if arr.size else float("nan")
        out.append(AggregateRow(ds, method, k, int(arr.size), mean, std))
    return out


_shared: dict = {}


def _init_worker(X, labels):
    _shared["X"], _shared["labels"] = X, labels


def _run_one(job) -> TrialRow:
    dataset, method, k, trial, seed, r, max_iters = job
    X, labels = _shared["X"], _shared["labels"]
    row = TrialRow(dataset, method, k, trial, seed)
    start = time.perf_counter()
    try:
        sol, stats = cluster(X, k, r=r, rng_seed=seed, method=method, max_iters=max_iters)
        row.entropy = total_entropy(sol, labels).total
        row.final_t = sol.cached_t
        row.iterations = stats.iterations
        row.moves = stats.moves_accepted
        row.converged = stats.converged
    except Exception as exc:  # recorded per row; the sweep carries on
        row.error = f"{type(exc).__name__}: {exc}"
    row.wall_time_ms = (time.perf_counter() - start) * 1000.0
    return row


def worker_count() -> int:
    env = os.environ.get("TEXTCLUST_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_bench(X, labels: Sequence[str], config: BenchConfig, workers: int | None = None) -> BenchResult:
    """Run every (method, k, trial) cell; trial ``t`` uses seed ``base_seed + t`` for all methods."""
    labels = list(labels)
    if X.shape[0] != len(labels):
        raise ValueError("labels and documents differ in count")
    jobs = [
        (config.dataset, method, k, t, config.base_seed + t, config.r, config.max_iters)
        for method in config.methods
        for k in config.k_values
        for t in range(config.trials)
    ]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(X, labels)) as ex:
            rows = list(ex.map(_run_one, jobs))
    else:
        _init_worker(X, labels)
        rows = []
        for job in jobs:
            rows.append(_run_one(job))
            log.info("%s k=%d trial=%d entropy=%.4f", job[1], job[2], job[3], rows[-1].entropy)
    order = {m: i for i, m in enumerate(config.methods)}
    korder = {k: i for i, k in enumerate(config.k_values)}
    rows.sort(key=lambda r: (order[r.method], korder[r.k], r.trial))
    return BenchResult(rows, aggregate(rows))


def fmt(x: float) -> str:
    return f"{x:.6f}"


def aggregate_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.stem + "_aggregate" + (path.suffix or ".csv"))


def write_csv(result: BenchResult, path, timings: bool = False) -> tuple[Path, Path]:
    """Write per-trial rows to ``path`` and aggregates next to it.

    Wall-clock times vary between runs, so they are only written with
    ``timings=True``; without them the files are byte-for-byte reproducible.
    """
    path = Path(path)
    cols = TRIAL_COLUMNS + (["wall_time_ms"] if timings else [])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for r in result.rows:
            rec = [r.dataset, r.method, r.k, r.trial, r.rng_seed, fmt(r.entropy), fmt(r.final_t),
                   r.iterations, r.moves, int(r.converged), r.error]
            if timings:
                rec.append(f"{r.wall_time_ms:.3f}")
            w.writerow(rec)
    agg = aggregate_path(path)
    with open(agg, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(AGGREGATE_COLUMNS)
        for a in result.aggregates:
            w.writerow([a.dataset, a.method, a.k, a.trials, fmt(a.mean_entropy), fmt(a.std_entropy)])
    return path, agg
