"""Exhaustive enumeration of epsilon-assignments for small instances.

Every complete epsilon-assignment corresponds to exactly one injection
from a subset of U into V (the elements outside the subset are removed,
the unused elements of V are inserted).  Enumerating those injections
therefore enumerates the assignments, which gives a ground-truth optimum
independent of any solver.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .core import EditCostMatrix, EpsilonAssignment
from .errors import SizeLimitError

DEFAULT_LIMIT = 12


@dataclass(frozen=True)
class EnumerationCursor:
    """One injection: ``subset[t]`` (1-based, sorted) is sent to ``images[t]``."""

    n: int
    m: int
    subset: tuple[int, ...]
    images: tuple[int, ...]

    def to_assignment(self) -> EpsilonAssignment:
        rho = [self.m + 1] * self.n
        varrho = [self.n + 1] * self.m
        for i, j in zip(self.subset, self.images):
            rho[i - 1] = j
            varrho[j - 1] = i
        return EpsilonAssignment(rho, varrho)


def _check_limit(n: int, m: int, limit: int | None) -> None:
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    if limit is not None and n + m > limit:
        raise SizeLimitError(f"n + m = {n + m} exceeds the enumeration limit {limit}")


def iter_injections(n: int, m: int, limit: int | None = DEFAULT_LIMIT) -> Iterator[EnumerationCursor]:
    """Injections ordered by decreasing size, then lexicographic subset, then images."""
    _check_limit(n, m, limit)
    for p in range(min(n, m), -1, -1):
        for subset in itertools.combinations(range(1, n + 1), p):
            for images in itertools.permutations(range(1, m + 1), p):
                yield EnumerationCursor(n, m, subset, images)


def enumerate_assignments(n: int, m: int, limit: int | None = DEFAULT_LIMIT) -> Iterator[EpsilonAssignment]:
    """Yield every complete epsilon-assignment between sets of sizes n and m once."""
    for cursor in iter_injections(n, m, limit):
        yield cursor.to_assignment()


def count_assignments(n: int, m: int) -> int:
    """Exact number of epsilon-assignments: sum_p C(n,p) C(m,p) p!."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    return sum(
        math.comb(n, p) * math.comb(m, p) * math.factorial(p) for p in range(min(n, m) + 1)
    )


def count_bounds(n: int, m: int) -> tuple[int, int]:
    """Lower and upper bounds C(n+m, s) and (n+m)!/l! with s = min, l = max."""
    small, large = min(n, m), max(n, m)
    return math.comb(n + m, small), math.factorial(n + m) // math.factorial(large)


def brute_force_optimum(
    c: EditCostMatrix, limit: int | None = DEFAULT_LIMIT
) -> tuple[EpsilonAssignment, float]:
    """Minimum-cost epsilon-assignment found by full enumeration.

    Ties keep the first assignment in enumeration order.
    """
    n, m = c.n, c.m
    _check_limit(n, m, limit)
    costs = c.costs.tolist()
    removal = [costs[i][m] for i in range(n)]
    insertion = costs[n][:m]
    base = sum(removal) + sum(insertion)
    # Substituting u_i by v_j replaces a removal and an insertion.
    gain = [[costs[i][j] - removal[i] - insertion[j] for j in range(m)] for i in range(n)]

    best = None
    best_cost = math.inf
    for cursor in iter_injections(n, m, limit=None):
        total = base
        for i, j in zip(cursor.subset, cursor.images):
            total += gain[i - 1][j - 1]
        if total < best_cost:
            best_cost = total
            best = cursor
    assert best is not None
    assignment = best.to_assignment()
    # Recompute directly to avoid accumulated rounding from the gain form.
    exact = sum(costs[i][j - 1] for i, j in enumerate(assignment.rho))
    exact += sum(costs[n][j] for j, i in enumerate(assignment.varrho) if i == n + 1)
    return assignment, float(exact)
