"""Timing harness comparing the direct solver with the squared-LSAP route."""

from __future__ import annotations

import csv
import gc
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence, TextIO

from .core import EditCostMatrix
from .generators import GeneratorSpec, generate
from .hungarian import solve
from .reference import solve_via_slsape

SOLVERS: dict[str, Callable[[EditCostMatrix], object]] = {
    "lsape": solve,
    "slsape": solve_via_slsape,
}
CSV_COLUMNS = ("family", "n", "m", "solver", "reps", "median_s", "mean_s")


@dataclass(frozen=True)
class BenchRecord:
    family: str
    n: int
    m: int
    solver: str
    repetitions: int
    median_seconds: float
    mean_seconds: float

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if self.solver not in SOLVERS:
            raise ValueError(f"unknown solver {self.solver!r}")

    def as_row(self) -> list:
        return [
            self.family, self.n, self.m, self.solver,
            self.repetitions, f"{self.median_seconds:.9f}", f"{self.mean_seconds:.9f}",
        ]


def _time_once(fn, c: EditCostMatrix) -> float:
    # Like timeit, keep the garbage collector out of the measured region.
    enabled = gc.isenabled()
    gc.disable()
    try:
        start = time.perf_counter()
        fn(c)
        elapsed = time.perf_counter() - start
    finally:
        if enabled:
            gc.enable()
    # perf_counter can tick coarsely on some platforms; keep times positive
    return max(elapsed, 1e-9)


def time_solver(solver: str, c: EditCostMatrix, reps: int) -> list[float]:
    """Wall-clock seconds of ``reps`` consecutive runs of one solver on ``c``."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    fn = SOLVERS[solver]
    return [_time_once(fn, c) for _ in range(reps)]


def bench_instance(family: str, c: EditCostMatrix, reps: int,
                   solvers: Sequence[str] = ("lsape", "slsape")) -> list[BenchRecord]:
    """Time every solver on the same matrix.

    Repetitions are interleaved (one run of each solver per round) so slow
    drifts of the machine load affect all solvers alike.  One untimed
    warm-up run per solver keeps one-off compilation and cache loading out
    of the records.
    """
    if reps < 1:
        raise ValueError("reps must be at least 1")
    for name in solvers:
        SOLVERS[name](c)
    times: dict[str, list[float]] = {name: [] for name in solvers}
    for _ in range(reps):
        for name in solvers:
            times[name].append(_time_once(SOLVERS[name], c))
    return [
        BenchRecord(
            family=family, n=c.n, m=c.m, solver=name, repetitions=reps,
            median_seconds=statistics.median(times[name]),
            mean_seconds=statistics.fmean(times[name]),
        )
        for name in solvers
    ]


def run_bench(families: Iterable[str], sizes: Iterable[tuple[int, int]], reps: int = 5,
              seed: int = 0, solvers: Sequence[str] = ("lsape", "slsape")) -> list[BenchRecord]:
    """One record per (family, size, solver); both solvers see the same matrix."""
    sizes = list(sizes)
    records = []
    for family in families:
        for n, m in sizes:
            c = generate(GeneratorSpec(family, n, m, seed=seed))
            records.extend(bench_instance(family, c, reps, solvers))
    return records


def parse_sizes(text: str) -> list[tuple[int, int]]:
    """Parse ``"n:m,n:m,..."`` into a list of size pairs."""
    sizes = []
    for item in text.split(","):
        parts = item.strip().split(":")
        if len(parts) != 2:
            raise ValueError(f"bad size {item!r}; expected n:m")
        n, m = int(parts[0]), int(parts[1])
        if n < 0 or m < 0:
            raise ValueError(f"bad size {item!r}; dimensions must be non-negative")
        sizes.append((n, m))
    return sizes


def parse_range(text: str) -> list[int]:
    """Parse an inclusive ``"start:stop:step"`` sweep."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"bad range {text!r}; expected start:stop:step")
    start, stop, step = (int(p) for p in parts)
    if step <= 0 or start < 0 or stop < start:
        raise ValueError(f"bad range {text!r}")
    return list(range(start, stop + 1, step))


def write_csv(records: Iterable[BenchRecord], target: str | Path | TextIO) -> None:
    if hasattr(target, "write"):
        _write_rows(records, target)
    else:
        with open(target, "w", newline="") as fh:
            _write_rows(records, fh)


def _write_rows(records, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(r.as_row())
