"""Hungarian-type primal-dual solver for the assignment problem with edition.

The solver keeps a partial epsilon-assignment and dual variables that
satisfy complementary slackness, and grows the assignment one element at
a time along zero-reduced-cost augmenting paths.  Unlike the classical
algorithm, a path may also end on epsilon: at a row currently removed, or
by inserting the column that closes the path.

Internally rows and columns are 0-based, the epsilon row/column sits at
index ``n``/``m`` and ``-1`` marks an unassigned element.  The public
functions translate to and from the 1-based vectors of :mod:`lsape.core`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import (
    DualVariables,
    EditCostMatrix,
    EpsilonAssignment,
    AssignmentStatus,
    check_slackness,
    dual_objective,
    validate_assignment,
    _raw_cost,
)
from . import _engine
from ._engine import UNASSIGNED
from .errors import InvalidAssignmentError, InvariantViolation

__all__ = [
    "AlternatingTree",
    "AugmentResult",
    "SolveResult",
    "SolveStats",
    "apply_augmenting_path",
    "augment",
    "check_slackness",
    "preprocess",
    "solve",
]


@dataclass
class SolveStats:
    augmentations: int = 0
    dual_updates: int = 0
    zero_delta_updates: int = 0
    max_tree_columns: int = 0
    max_tree_rows: int = 0

    def to_dict(self) -> dict:
        return dict(vars(self))

    def _absorb(self, counters: np.ndarray) -> None:
        self.augmentations += int(counters[_engine.AUGMENTATIONS])
        self.dual_updates += int(counters[_engine.DUAL_UPDATES])
        self.zero_delta_updates += int(counters[_engine.ZERO_DELTA_UPDATES])
        self.max_tree_columns = max(self.max_tree_columns, int(counters[_engine.MAX_TREE_COLUMNS]))
        self.max_tree_rows = max(self.max_tree_rows, int(counters[_engine.MAX_TREE_ROWS]))


class AlternatingTree:
    """Scratch arrays of the augmenting-path search over ``n_rows`` rows.

    ``pi[i]`` is the smallest reduced cost reaching row ``i`` from the tree
    columns and ``pred[i]`` the column achieving it.  The rows are kept in
    the permutation ``perm`` (inverse ``pos``) whose three contiguous
    regions hold the expanded rows, the labelled rows waiting in FIFO
    order, and the rows not reached yet.  ``sv`` lists the tree columns in
    insertion order and ``zeros`` buffers rows that reach zero reduced
    cost during one scan.  Everything is O(n_rows) and reused across the
    augmentations of a phase.
    """

    __slots__ = ("pi", "pred", "perm", "pos", "sv", "zeros")

    def __init__(self, n_rows: int):
        self.pi = np.full(n_rows, np.inf)
        self.pred = np.full(n_rows, UNASSIGNED, dtype=np.int64)
        self.perm = np.arange(n_rows, dtype=np.int64)
        self.pos = np.arange(n_rows, dtype=np.int64)
        # the tree holds at most one column per expanded row, plus the root
        self.sv = np.empty(n_rows + 1, dtype=np.int64)
        self.zeros = np.empty(max(n_rows, 1), dtype=np.int64)

    def buffers(self) -> tuple:
        return self.pi, self.pred, self.perm, self.pos, self.sv, self.zeros


def _run_phase(C, n_rows, n_cols, row_of_col, col_of_row, u, v, tol, stats, epsilon=True):
    """Augment every unassigned column of ``C`` (rows are the other side)."""
    tree = AlternatingTree(n_rows)
    counters = np.zeros(_engine.N_COUNTERS, dtype=np.int64)
    failed = _engine.assign_columns(
        C, n_rows, n_cols, row_of_col, col_of_row, u, v, float(tol), epsilon,
        *tree.buffers(), counters,
    )
    stats._absorb(counters)
    if failed >= 0:
        raise InvariantViolation(f"no augmenting path from column {failed + 1}")


def _preprocess(C, n, m, tol):
    """Row/column reductions followed by a greedy scan of zero reduced costs."""
    u = np.zeros(n + 1)
    v = np.zeros(m + 1)
    col_of_row = np.full(n, UNASSIGNED, dtype=np.int64)
    row_of_col = np.full(m, UNASSIGNED, dtype=np.int64)
    if n:
        u[:n] = C[:n].min(axis=1)
    if m:
        # Row by row to avoid materialising C - u.
        vm = C[n, :m].copy()
        for i in range(n):
            np.minimum(vm, C[i, :m] - u[i], out=vm)
        v[:m] = vm
    for i in range(n):
        if m:
            red = C[i, :m] - u[i] - v[:m]
            hits = np.flatnonzero((red <= tol) & (row_of_col == UNASSIGNED))
            if hits.size:
                j = int(hits[0])
                col_of_row[i] = j
                row_of_col[j] = i
                continue
        if C[i, m] - u[i] <= tol:
            col_of_row[i] = m
    if m:
        inserted = (row_of_col == UNASSIGNED) & (C[n, :m] - v[:m] <= tol)
        row_of_col[inserted] = n
    return col_of_row, row_of_col, u, v


def _to_internal(a: EpsilonAssignment):
    return (
        np.asarray(a.rho, dtype=np.int64) - 1,
        np.asarray(a.varrho, dtype=np.int64) - 1,
    )


def _to_external(col_of_row, row_of_col) -> EpsilonAssignment:
    return EpsilonAssignment((col_of_row + 1).tolist(), (row_of_col + 1).tolist())


def preprocess(c: EditCostMatrix, tolerance: float = 0.0):
    """Initial partial assignment and duals satisfying complementary slackness.

    Returns ``(assignment, duals)``; runs in O(nm) time.
    """
    col_of_row, row_of_col, u, v = _preprocess(c.costs, c.n, c.m, tolerance)
    return _to_external(col_of_row, row_of_col), DualVariables(u, v)


@dataclass(frozen=True)
class AugmentResult:
    """Outcome of :func:`augment` (1-based).

    ``sink_row`` is a row of U (then ``sink_col == 0``) or ``n + 1`` when the
    path is closed by inserting column ``sink_col``.  ``pred[i - 1]`` is the
    tree predecessor column of row ``i`` (0 when the row was never reached).
    """

    sink_row: int
    sink_col: int
    duals: DualVariables
    pred: tuple[int, ...]


def _require_partial(a: EpsilonAssignment, c: EditCostMatrix) -> None:
    if validate_assignment(a, c.n, c.m) is AssignmentStatus.INVALID:
        raise InvalidAssignmentError("assignment is inconsistent with the instance")


def _require_partial_counts(a: EpsilonAssignment) -> None:
    if validate_assignment(a, a.n, a.m) is AssignmentStatus.INVALID:
        raise InvalidAssignmentError("assignment is inconsistent")


def augment(
    k: int,
    c: EditCostMatrix,
    assignment: EpsilonAssignment,
    duals: DualVariables,
    tolerance: float = 0.0,
    stats: Optional[SolveStats] = None,
) -> AugmentResult:
    """Find an augmenting path rooted at the unassigned column ``k`` (1-based).

    ``assignment`` and ``duals`` must satisfy complementary slackness; the
    returned duals still do, and the path has zero reduced length.
    """
    _require_partial(assignment, c)
    if not 1 <= k <= c.m:
        raise ValueError(f"column {k} out of range 1..{c.m}")
    if assignment.varrho[k - 1] != 0:
        raise ValueError(f"column {k} is already assigned")
    if (duals.n, duals.m) != (c.n, c.m):
        raise ValueError("dual sizes do not match the instance")
    col_of_row, row_of_col = _to_internal(assignment)
    u, v = duals.u.copy(), duals.v.copy()
    tree = AlternatingTree(c.n)
    counters = np.zeros(_engine.N_COUNTERS, dtype=np.int64)
    sink_row, sink_col = _engine.grow_tree(
        k - 1, c.costs, c.n, c.m, row_of_col, col_of_row, u, v, float(tolerance), True,
        *tree.buffers(), counters,
    )
    if stats is not None:
        stats._absorb(counters)
    if sink_row == _engine.NO_PATH:
        raise InvariantViolation(f"no augmenting path from column {k}")
    return AugmentResult(
        sink_row=int(sink_row) + 1,
        sink_col=int(sink_col) + 1,
        duals=DualVariables(u, v),
        pred=tuple((tree.pred + 1).tolist()),
    )


def apply_augmenting_path(
    sink_row: int, sink_col: int, pred, assignment: EpsilonAssignment, k: int
) -> EpsilonAssignment:
    """Flip the path found by :func:`augment` and return the new assignment."""
    n = assignment.n
    col_of_row, row_of_col = _to_internal(assignment)
    m = assignment.m
    _require_partial_counts(assignment)
    pred0 = np.asarray(pred, dtype=np.int64).reshape(-1) - 1
    # the compiled flip does no bounds checking of its own
    if pred0.size != n or np.any(pred0 < -1) or np.any(pred0 >= m):
        raise InvalidAssignmentError(f"pred must hold {n} column indices in 0..{m}")
    if not 1 <= k <= m:
        raise ValueError(f"column {k} out of range 1..{m}")
    if not 1 <= sink_row <= n + 1 or (sink_row == n + 1 and not 1 <= sink_col <= m):
        raise ValueError(f"invalid sink ({sink_row}, {sink_col})")
    ok = _engine.flip_path(sink_row - 1, sink_col - 1, pred0, row_of_col, col_of_row, k - 1, n)
    if not ok:
        raise InvariantViolation(f"predecessor chain does not lead back to column {k}")
    return _to_external(col_of_row, row_of_col)


@dataclass(frozen=True)
class SolveResult:
    assignment: EpsilonAssignment
    duals: Optional[DualVariables]
    objective: float
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def dual_objective(self) -> Optional[float]:
        return None if self.duals is None else dual_objective(self.duals)

    def to_dict(self) -> dict:
        out = self.assignment.to_dict()
        out["u"] = None if self.duals is None else self.duals.u.tolist()
        out["v"] = None if self.duals is None else self.duals.v.tolist()
        out["cost"] = self.objective
        out["stats"] = self.stats.to_dict()
        return out


def solve(c: EditCostMatrix, preprocess: bool = True, tolerance: float = 0.0) -> SolveResult:
    """Optimal epsilon-assignment and optimal duals of ``c``.

    First every unassigned element of V is assigned by augmentation, then
    every remaining element of U by the same procedure on the transposed
    instance.  Time O(min(n,m)^2 max(n,m)); besides the input matrix only
    O(n + m) memory is used.
    """
    n, m = c.n, c.m
    C = c.costs
    if preprocess:
        col_of_row, row_of_col, u, v = _preprocess(C, n, m, tolerance)
    else:
        col_of_row = np.full(n, UNASSIGNED, dtype=np.int64)
        row_of_col = np.full(m, UNASSIGNED, dtype=np.int64)
        u, v = np.zeros(n + 1), np.zeros(m + 1)
    stats = SolveStats()
    _run_phase(C, n, m, row_of_col, col_of_row, u, v, tolerance, stats)
    _run_phase(C.T, m, n, col_of_row, row_of_col, v, u, tolerance, stats)

    assignment = _to_external(col_of_row, row_of_col)
    if 0 in assignment.rho or 0 in assignment.varrho:
        raise InvariantViolation("solver finished with unassigned elements")
    return SolveResult(
        assignment=assignment,
        duals=DualVariables(u, v),
        objective=_raw_cost(assignment, C),
        stats=stats,
    )
