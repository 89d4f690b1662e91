import itertools
import math

import pytest

from lsape import EditCostMatrix, EpsilonAssignment, SizeLimitError, assignment_cost
from lsape.oracle import (
    brute_force_optimum,
    count_assignments,
    count_bounds,
    enumerate_assignments,
)

from conftest import EXAMPLE_41_OPTIMUM


def _matrix_count(n, m):
    """Count binary (n+1)x(m+1) matrices with the row/column constraints directly."""
    total = 0
    for rows in itertools.product(range(m + 1), repeat=n):
        used = [j for j in rows if j < m]
        if len(used) == len(set(used)):
            total += 1
    return total


def test_enumerate_forced_pair():
    got = list(enumerate_assignments(1, 1))
    assert got == [EpsilonAssignment((1,), (1,)), EpsilonAssignment((2,), (2,))]


def test_enumerate_two_by_two():
    got = list(enumerate_assignments(2, 2))
    assert len(got) == 7 == len(set(got))
    assert all(a.is_complete() for a in got)


def test_enumerate_only_insertions():
    assert list(enumerate_assignments(0, 3)) == [EpsilonAssignment((), (1, 1, 1))]


def test_enumerate_limit():
    with pytest.raises(SizeLimitError):
        list(enumerate_assignments(7, 7))


@pytest.mark.parametrize("n, m, expected", [(1, 1, 2), (2, 3, 13), (0, 0, 1), (2, 2, 7)])
def test_count_values(n, m, expected):
    assert count_assignments(n, m) == expected


def test_count_bounds_example():
    assert count_bounds(2, 3) == (10, 20)


@pytest.mark.parametrize("n, m", [(n, m) for n in range(4) for m in range(4)])
def test_count_matches_independent_enumeration(n, m):
    assert count_assignments(n, m) == _matrix_count(n, m) == len(list(enumerate_assignments(n, m)))


def test_count_symmetric_and_big():
    assert count_assignments(40, 25) == count_assignments(25, 40)
    assert count_assignments(30, 30) > 2**64


def test_count_rejects_negative():
    with pytest.raises(ValueError):
        count_assignments(-1, 2)


def test_optimum_zero_matrix():
    _, value = brute_force_optimum(EditCostMatrix([[0] * 4] * 3))
    assert value == 0


def test_optimum_small_tie():
    a, value = brute_force_optimum(EditCostMatrix([[3, 2], [1, 0]]))
    assert value == 3
    assert a == EpsilonAssignment((1,), (1,))


def test_optimum_example(example41):
    a, value = brute_force_optimum(example41)
    assert value == EXAMPLE_41_OPTIMUM
    assert assignment_cost(a, example41) == value
    assert min(assignment_cost(b, example41) for b in enumerate_assignments(4, 5)) == value


def test_factorial_growth():
    # a sanity check on the upper bound formula for n <= m
    for m in range(1, 6):
        assert count_bounds(1, m)[1] == math.factorial(m + 1) // math.factorial(m)
