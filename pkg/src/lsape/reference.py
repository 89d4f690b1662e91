"""Baseline: classical Hungarian LSAP solver applied to the squared instance.

The LSAP solver shares the augmenting-path engine of
:mod:`lsape.hungarian` with every epsilon-specific step disabled, so
timing differences between the two routes come from problem size, not
from implementation quality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    EditCostMatrix,
    build_slsape,
    from_slsape_bijection,
    _raw_cost,
)
from .errors import ForbiddenCellError, InvalidInstanceError, InvariantViolation
from .hungarian import UNASSIGNED, SolveResult, SolveStats, _run_phase


@dataclass(frozen=True, eq=False)
class LsapResult:
    """``permutation[r - 1]`` is the 1-based column assigned to row ``r``."""

    permutation: tuple[int, ...]
    u: np.ndarray
    v: np.ndarray
    objective: float
    stats: SolveStats


def _lsap_preprocess(C, N):
    u = C.min(axis=1) if N else np.zeros(0)
    v = np.empty(N)
    for j in range(N):
        v[j] = (C[:, j] - u).min()
    col_of_row = np.full(N, UNASSIGNED, dtype=np.int64)
    row_of_col = np.full(N, UNASSIGNED, dtype=np.int64)
    for i in range(N):
        hits = np.flatnonzero((C[i] - u[i] - v == 0) & (row_of_col == UNASSIGNED))
        if hits.size:
            j = int(hits[0])
            col_of_row[i] = j
            row_of_col[j] = i
    return col_of_row, row_of_col, u, v


def solve_lsap(costs) -> LsapResult:
    """Optimal permutation of a square, finite, non-negative cost matrix."""
    C = np.asarray(costs, dtype=np.float64)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise InvalidInstanceError(f"LSAP needs a square matrix, got shape {C.shape}")
    if not np.all(np.isfinite(C)) or np.any(C < 0):
        raise InvalidInstanceError("LSAP costs must be finite and non-negative")
    N = C.shape[0]
    col_of_row, row_of_col, u, v = _lsap_preprocess(C, N)
    stats = SolveStats()
    _run_phase(C, N, N, row_of_col, col_of_row, u, v, 0.0, stats, epsilon=False)
    if np.any(col_of_row == UNASSIGNED):
        raise InvariantViolation("LSAP solver left rows unassigned")
    perm = tuple((col_of_row + 1).tolist())
    objective = float(C[np.arange(N), col_of_row].sum()) if N else 0.0
    return LsapResult(permutation=perm, u=u, v=v, objective=objective, stats=stats)


def solve_via_slsape(c: EditCostMatrix, omega_policy: str = "sum") -> SolveResult:
    """Solve the edit problem through its squared ``(n+m) x (n+m)`` LSAP.

    Raises :class:`ForbiddenCellError` when the LSAP optimum pays omega,
    which can only happen under the unsafe ``"tight"`` policy.  The
    returned result carries no duals: the squared duals do not map onto
    the edit formulation.
    """
    inst = build_slsape(c, omega_policy)
    lsap = solve_lsap(inst.costs)
    for r, col in enumerate(lsap.permutation, start=1):
        if inst.is_forbidden(r, col):
            raise ForbiddenCellError(
                f"squared optimum uses forbidden cell ({r}, {col}) with omega={inst.omega}"
            )
    assignment = from_slsape_bijection(lsap.permutation, c.n, c.m)
    return SolveResult(
        assignment=assignment,
        duals=None,
        objective=_raw_cost(assignment, c.costs),
        stats=lsap.stats,
    )
