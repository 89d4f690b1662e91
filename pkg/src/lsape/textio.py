"""Plain-text edit cost matrices and JSON solutions.

Matrix files look like::

    # family=product n=2 m=2 seed=0
    2 2
    1 2 3
    2 4 6
    3 6 0

Lines starting with ``#`` and blank lines are ignored.  The first data line
holds ``n m``; the next ``n + 1`` lines hold ``m + 1`` decimal values each.
Values are written with :func:`repr`, so floats survive a round trip
bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, TextIO

import numpy as np

from .core import DualVariables, EditCostMatrix, EpsilonAssignment
from .errors import InvalidAssignmentError, InvalidInstanceError


class MatrixFormatError(InvalidInstanceError):
    """The text does not follow the matrix file layout."""


def _format_value(x: float) -> str:
    if x == int(x) and abs(x) < 2**53:
        return str(int(x))
    return repr(float(x))


def format_matrix(c: EditCostMatrix, header: Iterable[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(f"{c.n} {c.m}")
    for row in c.costs.tolist():
        lines.append(" ".join(_format_value(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> EditCostMatrix:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            rows.append((lineno, line.split()))
    if not rows:
        raise MatrixFormatError("empty matrix file")

    lineno, dims = rows[0]
    try:
        n, m = (int(t) for t in dims)
    except ValueError:
        raise MatrixFormatError(f"line {lineno}: expected 'n m', got {' '.join(dims)!r}") from None
    if n < 0 or m < 0:
        raise MatrixFormatError(f"line {lineno}: negative dimension")
    body = rows[1:]
    if len(body) != n + 1:
        raise MatrixFormatError(f"expected {n + 1} matrix rows, found {len(body)}")

    values = np.empty((n + 1, m + 1))
    for r, (lineno, tokens) in enumerate(body):
        if len(tokens) != m + 1:
            raise MatrixFormatError(f"line {lineno}: expected {m + 1} values, found {len(tokens)}")
        try:
            values[r] = [float(t) for t in tokens]
        except ValueError as exc:
            raise MatrixFormatError(f"line {lineno}: {exc}") from None
    return EditCostMatrix(values)


def read_matrix(source: str | Path | TextIO) -> EditCostMatrix:
    if hasattr(source, "read"):
        return parse_matrix(source.read())
    return parse_matrix(Path(source).read_text())


def write_matrix(c: EditCostMatrix, target: str | Path | TextIO, header: Iterable[str] = ()) -> None:
    text = format_matrix(c, header)
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text)


@dataclass(frozen=True)
class Solution:
    """A solution file: an assignment, its claimed cost and optional duals."""

    assignment: EpsilonAssignment
    cost: Optional[float] = None
    duals: Optional[DualVariables] = None
    stats: Optional[dict] = None


def _int_list(data: dict, key: str) -> list[int]:
    value = data.get(key)
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise InvalidAssignmentError(f"{key!r} must be a list of integers")
    return value


def _number_list(data: dict, key: str) -> Optional[list[float]]:
    value = data.get(key)
    if value is None:
        return None
    if not isinstance(value, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
    ):
        raise InvalidAssignmentError(f"{key!r} must be a list of numbers")
    return [float(x) for x in value]


def solution_from_dict(data: dict) -> Solution:
    if not isinstance(data, dict):
        raise InvalidAssignmentError("solution must be a JSON object")
    assignment = EpsilonAssignment(_int_list(data, "rho"), _int_list(data, "varrho"))
    cost = data.get("cost")
    if cost is not None and (isinstance(cost, bool) or not isinstance(cost, (int, float))):
        raise InvalidAssignmentError("'cost' must be a number")
    u, v = _number_list(data, "u"), _number_list(data, "v")
    if (u is None) != (v is None):
        raise InvalidAssignmentError("'u' and 'v' must be given together")
    duals = None
    if u is not None:
        try:
            duals = DualVariables(np.array(u), np.array(v))
        except ValueError as exc:
            raise InvalidAssignmentError(f"invalid duals: {exc}") from None
    return Solution(
        assignment=assignment,
        cost=None if cost is None else float(cost),
        duals=duals,
        stats=data.get("stats"),
    )


def parse_solution(text: str) -> Solution:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidAssignmentError(f"solution is not valid JSON: {exc}") from None
    return solution_from_dict(data)


def read_solution(source: str | Path | TextIO) -> Solution:
    if hasattr(source, "read"):
        return parse_solution(source.read())
    return parse_solution(Path(source).read_text())


def dump_solution(result_dict: dict) -> str:
    return json.dumps(result_dict, indent=None)
