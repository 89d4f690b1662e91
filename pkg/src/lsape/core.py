"""Problem instances, primal/dual solutions and the conversions between them.

Index convention: every public vector uses the 1-based *values* of the
edit formulation.  ``rho[i - 1] = j`` means that ``u_i`` goes to ``v_j``
(``j <= m``), is removed (``j == m + 1``) or is unassigned (``j == 0``);
``varrho`` is the symmetric encoding for the elements of V, with ``n + 1``
standing for an insertion.  Python positions are 0-based as usual.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidAssignmentError, InvalidInstanceError

OMEGA_POLICIES = ("sum", "tight")


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class EditCostMatrix:
    """A validated ``(n+1) x (m+1)`` edit cost matrix.

    The top-left ``n x m`` block holds substitution costs, the last column
    removal costs, the last row insertion costs, and the bottom-right
    corner (epsilon to epsilon) must be zero.  Entries are stored as
    ``float64``, which is exact for integers below ``2**53``.
    """

    __slots__ = ("_costs",)

    def __init__(self, costs: Sequence[Sequence[float]] | np.ndarray):
        try:
            arr = np.array(costs, dtype=np.float64)
        except (TypeError, ValueError) as exc:
            raise InvalidInstanceError(f"cost matrix is not numeric: {exc}") from exc
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidInstanceError(
                f"cost matrix must be a non-empty 2-D array, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise InvalidInstanceError("cost matrix contains NaN or infinite entries")
        if np.any(arr < 0):
            raise InvalidInstanceError("cost matrix contains negative entries")
        if arr[-1, -1] != 0:
            raise InvalidInstanceError(
                f"epsilon-to-epsilon cost must be 0, got {arr[-1, -1]!r}"
            )
        self._costs = _frozen(arr)

    @classmethod
    def from_blocks(cls, substitution, removal, insertion) -> "EditCostMatrix":
        sub = np.asarray(substitution, dtype=np.float64)
        rem = np.asarray(removal, dtype=np.float64).reshape(-1)
        ins = np.asarray(insertion, dtype=np.float64).reshape(-1)
        n, m = rem.size, ins.size
        sub = sub.reshape(n, m)
        full = np.zeros((n + 1, m + 1))
        full[:n, :m] = sub
        full[:n, m] = rem
        full[n, :m] = ins
        return cls(full)

    @property
    def n(self) -> int:
        return self._costs.shape[0] - 1

    @property
    def m(self) -> int:
        return self._costs.shape[1] - 1

    @property
    def costs(self) -> np.ndarray:
        """Read-only view of the full matrix."""
        return self._costs

    @property
    def substitution(self) -> np.ndarray:
        return self._costs[:-1, :-1]

    @property
    def removal(self) -> np.ndarray:
        return self._costs[:-1, -1]

    @property
    def insertion(self) -> np.ndarray:
        return self._costs[-1, :-1]

    def is_integral(self) -> bool:
        return bool(np.all(self._costs == np.round(self._costs)))

    def transpose(self) -> "EditCostMatrix":
        """Instance transforming V into U: removals and insertions swap roles."""
        return EditCostMatrix(self._costs.T)

    def __getitem__(self, index):
        return self._costs[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, EditCostMatrix):
            return NotImplemented
        return self._costs.shape == other._costs.shape and bool(
            np.array_equal(self._costs, other._costs)
        )

    def __hash__(self) -> int:
        return hash((self._costs.shape, self._costs.tobytes()))

    def __repr__(self) -> str:
        return f"EditCostMatrix(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class EpsilonAssignment:
    """A (possibly partial) epsilon-assignment as the vector pair (rho, varrho)."""

    rho: tuple[int, ...]
    varrho: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(int(x) for x in self.rho))
        object.__setattr__(self, "varrho", tuple(int(x) for x in self.varrho))

    @property
    def n(self) -> int:
        return len(self.rho)

    @property
    def m(self) -> int:
        return len(self.varrho)

    def substitutions(self) -> list[tuple[int, int]]:
        return [(i + 1, j) for i, j in enumerate(self.rho) if 1 <= j <= self.m]

    def removals(self) -> list[int]:
        return [i + 1 for i, j in enumerate(self.rho) if j == self.m + 1]

    def insertions(self) -> list[int]:
        return [j + 1 for j, i in enumerate(self.varrho) if i == self.n + 1]

    def is_complete(self) -> bool:
        return validate_assignment(self, self.n, self.m) is AssignmentStatus.COMPLETE

    def to_dict(self) -> dict:
        return {"rho": list(self.rho), "varrho": list(self.varrho)}


class AssignmentStatus(enum.Enum):
    COMPLETE = "complete"
    PARTIAL = "partial"
    INVALID = "invalid"


def _consistency_problems(rho: Sequence[int], varrho: Sequence[int], n: int, m: int) -> list[str]:
    problems = []
    if len(rho) != n:
        problems.append(f"rho has length {len(rho)}, expected {n}")
    if len(varrho) != m:
        problems.append(f"varrho has length {len(varrho)}, expected {m}")
    if problems:
        return problems
    for i, j in enumerate(rho, start=1):
        if not 0 <= j <= m + 1:
            problems.append(f"rho[{i}]={j} out of range 0..{m + 1}")
        elif 1 <= j <= m and varrho[j - 1] != i:
            problems.append(f"rho[{i}]={j} but varrho[{j}]={varrho[j - 1]}")
    for j, i in enumerate(varrho, start=1):
        if not 0 <= i <= n + 1:
            problems.append(f"varrho[{j}]={i} out of range 0..{n + 1}")
        elif 1 <= i <= n and rho[i - 1] != j:
            problems.append(f"varrho[{j}]={i} but rho[{i}]={rho[i - 1]}")
    return problems


def assignment_problems(a: EpsilonAssignment, n: int, m: int) -> list[str]:
    """Human-readable list of consistency violations (empty when valid)."""
    return _consistency_problems(a.rho, a.varrho, n, m)


def validate_assignment(a: EpsilonAssignment, n: int, m: int) -> AssignmentStatus:
    """Classify ``a`` as a complete, partial or invalid epsilon-assignment."""
    if _consistency_problems(a.rho, a.varrho, n, m):
        return AssignmentStatus.INVALID
    if 0 in a.rho or 0 in a.varrho:
        return AssignmentStatus.PARTIAL
    return AssignmentStatus.COMPLETE


def _require(a: EpsilonAssignment, n: int, m: int, allow_partial: bool) -> AssignmentStatus:
    status = validate_assignment(a, n, m)
    if status is AssignmentStatus.INVALID:
        raise InvalidAssignmentError(
            "invalid epsilon-assignment: " + "; ".join(assignment_problems(a, n, m))
        )
    if status is AssignmentStatus.PARTIAL and not allow_partial:
        raise InvalidAssignmentError("a complete epsilon-assignment is required")
    return status


def _raw_cost(a: EpsilonAssignment, costs: np.ndarray) -> float:
    n = len(a.rho)
    total = 0.0
    for i, j in enumerate(a.rho):
        if j:
            total += costs[i, j - 1]
    for j, i in enumerate(a.varrho):
        if i == n + 1:
            total += costs[n, j]
    return float(total)


def assignment_cost(a: EpsilonAssignment, c: EditCostMatrix) -> float:
    """Total cost of a complete epsilon-assignment (substitutions + removals + insertions)."""
    _require(a, c.n, c.m, allow_partial=False)
    return _raw_cost(a, c.costs)


def to_matrix(a: EpsilonAssignment) -> np.ndarray:
    """Binary ``(n+1) x (m+1)`` matrix of a complete or partial assignment."""
    n, m = a.n, a.m
    _require(a, n, m, allow_partial=True)
    x = np.zeros((n + 1, m + 1), dtype=np.int8)
    for i, j in enumerate(a.rho):
        if j:
            x[i, j - 1] = 1
    for j, i in enumerate(a.varrho):
        if i == n + 1:
            x[n, j] = 1
    x[n, m] = 1
    return x


def from_matrix(x) -> EpsilonAssignment:
    """Inverse of :func:`to_matrix`; rejects matrices breaking the row/column sums."""
    x = np.asarray(x)
    if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] < 1:
        raise InvalidAssignmentError(f"expected a non-empty 2-D matrix, got shape {x.shape}")
    if not np.all((x == 0) | (x == 1)):
        raise InvalidAssignmentError("assignment matrix must be binary")
    n, m = x.shape[0] - 1, x.shape[1] - 1
    if x[n, m] != 1:
        raise InvalidAssignmentError("entry (n+1, m+1) must be 1")
    row_sums = x[:n, :].sum(axis=1)
    col_sums = x[:, :m].sum(axis=0)
    if np.any(row_sums > 1):
        bad = int(np.flatnonzero(row_sums > 1)[0]) + 1
        raise InvalidAssignmentError(f"row {bad} has more than one operation")
    if np.any(col_sums > 1):
        bad = int(np.flatnonzero(col_sums > 1)[0]) + 1
        raise InvalidAssignmentError(f"column {bad} has more than one operation")
    rho = [0] * n
    varrho = [0] * m
    for i in range(n):
        hits = np.flatnonzero(x[i])
        if hits.size:
            rho[i] = int(hits[0]) + 1
    for j in range(m):
        hits = np.flatnonzero(x[:, j])
        if hits.size:
            varrho[j] = int(hits[0]) + 1
    return EpsilonAssignment(rho, varrho)


@dataclass(frozen=True, eq=False)
class DualVariables:
    """Dual pair (u, v) of lengths n+1 and m+1 whose epsilon entries are zero."""

    u: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        u = np.array(self.u, dtype=np.float64).reshape(-1)
        v = np.array(self.v, dtype=np.float64).reshape(-1)
        if u.size < 1 or v.size < 1:
            raise ValueError("u and v must hold at least their epsilon entry")
        if u[-1] != 0 or v[-1] != 0:
            raise ValueError("dual variables of epsilon must be zero")
        object.__setattr__(self, "u", _frozen(u))
        object.__setattr__(self, "v", _frozen(v))

    @classmethod
    def zeros(cls, n: int, m: int) -> "DualVariables":
        return cls(np.zeros(n + 1), np.zeros(m + 1))

    @property
    def n(self) -> int:
        return self.u.size - 1

    @property
    def m(self) -> int:
        return self.v.size - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, DualVariables):
            return NotImplemented
        return np.array_equal(self.u, other.u) and np.array_equal(self.v, other.v)

    def __repr__(self) -> str:
        return f"DualVariables(u={self.u.tolist()}, v={self.v.tolist()})"


def dual_objective(d: DualVariables) -> float:
    """E(u, v): sum of all duals (the epsilon entries are zero)."""
    return float(d.u.sum() + d.v.sum())


def _check_dims(d: DualVariables, c: EditCostMatrix) -> None:
    if d.n != c.n or d.m != c.m:
        raise ValueError(
            f"dual sizes ({d.n}, {d.m}) do not match the instance ({c.n}, {c.m})"
        )


def reduced_costs(c: EditCostMatrix, d: DualVariables) -> np.ndarray:
    """Transformed matrix c - u - v (allocates a full copy; checker use only)."""
    _check_dims(d, c)
    return c.costs - d.u[:, None] - d.v[None, :]


def dual_feasible(d: DualVariables, c: EditCostMatrix, tolerance: float = 0.0) -> bool:
    """True iff u_i + v_j <= c_ij (up to ``tolerance``) on every cell."""
    return bool(reduced_costs(c, d).min() >= -tolerance)


def check_slackness(
    a: EpsilonAssignment, d: DualVariables, c: EditCostMatrix, tolerance: float = 0.0
) -> bool:
    """Complementary slackness together with dual feasibility.

    Holds iff every reduced cost is non-negative and every cell used by
    ``a`` (including the implicit epsilon corner) has zero reduced cost.
    ``a`` may be partial; an invalid assignment raises.
    """
    _check_dims(d, c)
    if a.n != c.n or a.m != c.m:
        raise ValueError(f"assignment sizes ({a.n}, {a.m}) do not match the instance")
    _require(a, c.n, c.m, allow_partial=True)
    red = reduced_costs(c, d)
    if red.min() < -tolerance:
        return False
    x = to_matrix(a).astype(bool)
    return bool(np.all(np.abs(red[x]) <= tolerance))


@dataclass(frozen=True, eq=False)
class SLsapeInstance:
    """Squared ``(n+m) x (n+m)`` LSAP instance equivalent to an edit cost matrix.

    Rows ``1..n`` are U and rows ``n+1..n+m`` the null elements
    ``eps_1..eps_m`` added for insertions; columns ``1..m`` are V and columns
    ``m+1..m+n`` the null elements ``eps_1..eps_n`` added for removals.
    """

    n: int
    m: int
    costs: np.ndarray
    omega: float
    policy: str = field(default="sum")

    @property
    def size(self) -> int:
        return self.n + self.m

    def is_forbidden(self, row: int, col: int) -> bool:
        """1-based cell test: u_i -> eps_k (k != i) or eps_l -> v_j (l != j)."""
        n, m = self.n, self.m
        if row <= n and col > m:
            return col - m != row
        if row > n and col <= m:
            return row - n != col
        return False

    def forbidden_mask(self) -> np.ndarray:
        n, m = self.n, self.m
        mask = np.zeros((n + m, n + m), dtype=bool)
        mask[:n, m:] = ~np.eye(n, dtype=bool)
        mask[n:, :m] = ~np.eye(m, dtype=bool)
        return mask


def omega_for(c: EditCostMatrix, policy: str = "sum") -> float:
    """Large value priced on forbidden cells.

    ``"sum"``: one more than the sum of every entry, so no optimal
    permutation can afford a forbidden cell.  ``"tight"``: one more than the
    largest substitution cost, the minimal requirement of the squared
    formulation; it is not always safe.
    """
    if policy == "sum":
        return float(c.costs.sum()) + 1.0
    if policy == "tight":
        sub = c.substitution
        return (float(sub.max()) if sub.size else 0.0) + 1.0
    raise ValueError(f"unknown omega policy {policy!r}; expected one of {OMEGA_POLICIES}")


def build_slsape(c: EditCostMatrix, omega_policy: str = "sum") -> SLsapeInstance:
    n, m = c.n, c.m
    omega = omega_for(c, omega_policy)
    sq = np.zeros((n + m, n + m))
    sq[:n, :m] = c.substitution
    if n:
        top_right = np.full((n, n), omega)
        np.fill_diagonal(top_right, c.removal)
        sq[:n, m:] = top_right
    if m:
        bottom_left = np.full((m, m), omega)
        np.fill_diagonal(bottom_left, c.insertion)
        sq[n:, :m] = bottom_left
    return SLsapeInstance(n=n, m=m, costs=_frozen(sq), omega=omega, policy=omega_policy)


def _check_permutation(p: Sequence[int], size: int) -> None:
    if len(p) != size:
        raise InvalidAssignmentError(f"permutation has length {len(p)}, expected {size}")
    if sorted(p) != list(range(1, size + 1)):
        raise InvalidAssignmentError("not a permutation of 1..n+m")


def slsape_cost(inst: SLsapeInstance, p: Sequence[int]) -> float:
    """Cost of a (1-based) permutation on the squared instance."""
    _check_permutation(p, inst.size)
    return float(sum(inst.costs[r, col - 1] for r, col in enumerate(p)))


def to_slsape_bijection(a: EpsilonAssignment) -> tuple[int, ...]:
    """Bijection of the squared problem with the same cost as ``a``.

    ``p[r-1]`` is the column assigned to row ``r``.  Null-to-null pairs are
    completed by matching the sorted row indices of ``{eps_j : v_j substituted}``
    with the sorted column indices of ``{eps_i : u_i substituted}``.
    """
    n, m = a.n, a.m
    _require(a, n, m, allow_partial=False)
    p = [0] * (n + m)
    for i, j in enumerate(a.rho, start=1):
        p[i - 1] = j if j <= m else m + i
    for j, i in enumerate(a.varrho, start=1):
        if i == n + 1:
            p[n + j - 1] = j
    null_rows = [n + j for j, i in enumerate(a.varrho, start=1) if i <= n]
    null_cols = [m + i for i, j in enumerate(a.rho, start=1) if j <= m]
    for r, col in zip(null_rows, null_cols):
        p[r - 1] = col
    return tuple(p)


def from_slsape_bijection(p: Sequence[int], n: int, m: int) -> EpsilonAssignment:
    """Epsilon-assignment induced by a bijection of the squared problem."""
    p = [int(x) for x in p]
    _check_permutation(p, n + m)
    rho = [0] * n
    varrho = [0] * m
    for r, col in enumerate(p, start=1):
        if r <= n:
            if col <= m:
                rho[r - 1] = col
                varrho[col - 1] = r
            elif col - m == r:
                rho[r - 1] = m + 1
            else:
                raise InvalidAssignmentError(f"forbidden pair u_{r} -> eps_{col - m}")
        elif col <= m:
            if r - n != col:
                raise InvalidAssignmentError(f"forbidden pair eps_{r - n} -> v_{col}")
            varrho[col - 1] = n + 1
    return EpsilonAssignment(rho, varrho)

