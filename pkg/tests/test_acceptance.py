"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Tolerances, instance counts and time budgets are the contractual ones;
they must not be relaxed to make a run green.
"""

import math
import statistics
import time

import numpy as np
import pytest

from lsape import (
    DualVariables,
    EditCostMatrix,
    EpsilonAssignment,
    apply_augmenting_path,
    augment,
    check_slackness,
    dual_feasible,
    dual_objective,
    preprocess,
    solve,
    solve_via_slsape,
)
from lsape.bench import bench_instance
from lsape.generators import GeneratorSpec, generate
from lsape.oracle import brute_force_optimum, count_assignments, count_bounds, enumerate_assignments

from conftest import EXAMPLE_41


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, detail
    return emit


def _sizes(seed, count, lo, hi):
    rng = np.random.default_rng(seed)
    return rng.integers(lo, hi + 1, size=(count, 2)).tolist()


def test_ac1_oracle_equivalence(report):
    start = time.perf_counter()
    mismatches = []
    for k, (n, m) in enumerate(_sizes(1, 1000, 0, 6)):
        c = generate(GeneratorSpec("uniform-random", n, m, seed=k, integer=True))
        got, want = solve(c).objective, brute_force_optimum(c)[1]
        if got != want:
            mismatches.append((k, n, m, got, want))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 30
    report("AC1 oracle equivalence", ok,
           f"1000 integer instances n,m in [0,6], {len(mismatches)} mismatches, {elapsed:.1f}s (< 30s)")


def test_ac2_squared_equivalence(report):
    start = time.perf_counter()
    worst = 0.0
    for k, (n, m) in enumerate(_sizes(2, 200, 1, 30)):
        c = generate(GeneratorSpec("uniform-random", n, m, seed=10_000 + k))
        a, b = solve(c).objective, solve_via_slsape(c).objective
        worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 60
    report("AC2 lsape vs squared LSAP", ok,
           f"200 real instances n,m in [1,30], max relative gap {worst:.2e} (<= 1e-9), {elapsed:.1f}s (< 60s)")


def test_ac3_preprocess_fixture(report):
    a, d = preprocess(EditCostMatrix(EXAMPLE_41))
    got = (d.u.tolist(), d.v.tolist(), a.rho, a.varrho)
    want = ([7, 2, 1, 2, 0], [0, 2, 2, 0, 0, 0], (1, 0, 0, 4), (1, 5, 5, 4, 0))
    report("AC3 preprocess fixture", got == want, f"u={got[0]} v={got[1]} rho={got[2]} varrho={got[3]}")


AUGMENT_FIXTURES = [
    ("two minimal paths",
     [[0, 2, 0, 0, 1, 3], [0, 4, 4, 2, 4, 1], [0, 4, 3, 4, 7, 4], [2, 4, 3, 0, 0, 2], [4, 0, 0, 6, 7, 0]],
     (1, 0, 0, 4), (1, 5, 5, 4, 0), 5, (4, 1, 0, 5), (2, 5, 5, 1, 4)),
    # The listed vectors for this case are the ones of the final matrix shown
    # with the example; (1,2,3)/(1,2,3,4) would use cells of reduced cost 2.
    ("insertion sink",
     [[0, 0, 3, 0, 4], [0, 2, 0, 2, 7], [0, 0, 2, 3, 6], [4, 6, 8, 0, 0]],
     (4, 1, 2), (2, 3, 0, 1), 3, (1, 3, 2), (1, 3, 2, 4)),
    ("removed-row sink",
     [[2, 3, 0, 4], [7, 0, 5, 0], [0, 0, 4, 6], [4, 6, 0, 0]],
     (3, 4, 2), (0, 3, 1), 1, (3, 2, 1), (3, 2, 1)),
]


def test_ac4_augment_fixtures(report):
    details, ok = [], True
    for name, rows, rho, varrho, k, want_rho, want_varrho in AUGMENT_FIXTURES:
        c = EditCostMatrix(rows)
        a = EpsilonAssignment(rho, varrho)
        res = augment(k, c, a, DualVariables.zeros(c.n, c.m))
        b = apply_augmenting_path(res.sink_row, res.sink_col, res.pred, a, k)
        exact = b.rho == want_rho and b.varrho == want_varrho
        assigned = sum(x != 0 for x in b.varrho) - sum(x != 0 for x in a.varrho)
        sound = check_slackness(b, res.duals, c) and assigned == 1
        ok = ok and exact and sound
        details.append(f"{name}: rho={b.rho} varrho={b.varrho} {'exact' if exact else 'MISMATCH'}")
    report("AC4 augment fixtures", ok, "; ".join(details))


def test_ac5_counting(report):
    bad = []
    for n in range(6):
        for m in range(6):
            if count_assignments(n, m) != sum(1 for _ in enumerate_assignments(n, m)):
                bad.append(("count", n, m))
    for m in range(9):
        for n in range(m + 1):
            lo, hi = count_bounds(n, m)
            if not (math.comb(n + m, n) == lo <= count_assignments(n, m) <= hi
                    == math.factorial(n + m) // math.factorial(m)):
                bad.append(("bounds", n, m))
    report("AC5 counting", not bad,
           f"36 enumerated pairs n,m <= 5 and bounds for n <= m <= 8, {len(bad)} failures {bad[:3]}")


def test_ac6_duality(report):
    failures = []
    for k, (n, m) in enumerate(_sizes(6, 500, 0, 50)):
        c = generate(GeneratorSpec("uniform-random", n, m, seed=20_000 + k, hi=100, integer=True))
        res = solve(c)
        if not (dual_feasible(res.duals, c) and check_slackness(res.assignment, res.duals, c)
                and res.objective == dual_objective(res.duals)):
            failures.append(k)
    report("AC6 duality and slackness", not failures,
           f"500 integer instances n,m <= 50, {len(failures)} failures (exact E(u,v) == objective)")


def _median_pair(m, reps):
    c = generate(GeneratorSpec("uniform-random", 30, m, seed=m))
    lsape, slsape = bench_instance("uniform-random", c, reps)
    return lsape.median_seconds, slsape.median_seconds


def test_ac7_timing_trend(report):
    start = time.perf_counter()
    reps = 9
    l30, s30 = _median_pair(30, reps)
    l300, s300 = _median_pair(300, reps)
    r30, r300 = s30 / l30, s300 / l300
    elapsed = time.perf_counter() - start
    ok = l300 < s300 and r300 > r30 and elapsed < 120
    report("AC7 timing trend", ok,
           f"n=30, {reps} reps: m=300 lsape {l300 * 1e3:.1f}ms vs squared {s300 * 1e3:.1f}ms; "
           f"ratio m=300 {r300:.2f} > ratio m=30 {r30:.2f}; {elapsed:.1f}s (< 120s)")


def _lsape_median(size, reps):
    c = generate(GeneratorSpec("uniform-random", size, size, seed=size))
    times = []
    for _ in range(reps):
        start = time.perf_counter()
        solve(c)
        times.append(time.perf_counter() - start)
    return statistics.median(times)


def test_ac8_complexity_smoke(report):
    import tracemalloc

    t200, t400 = _lsape_median(200, 5), _lsape_median(400, 5)
    growth = t400 / t200

    # Supporting runtime measurement for the O(n + m) auxiliary memory claim.
    c = generate(GeneratorSpec("uniform-random", 400, 400, seed=400))
    tracemalloc.start()
    solve(c)
    _, peak = tracemalloc.get_traced_memory()
    tracemalloc.stop()
    memory_ok = peak < c.costs.nbytes / 4

    report("AC8 complexity smoke", growth <= 12 and memory_ok,
           f"median 200x200 {t200 * 1e3:.1f}ms -> 400x400 {t400 * 1e3:.1f}ms, factor {growth:.2f} (<= 12); "
           f"peak auxiliary memory {peak / 1024:.0f} KiB vs matrix {c.costs.nbytes / 1024:.0f} KiB")
