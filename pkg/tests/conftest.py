import numpy as np
import pytest
from hypothesis import strategies as st

from lsape import EditCostMatrix

# Worked 4x5 instance used across the hungarian fixtures.
EXAMPLE_41 = [
    [7, 11, 9, 8, 9, 10],
    [2, 8, 8, 5, 7, 3],
    [1, 7, 6, 6, 9, 5],
    [3, 7, 6, 2, 2, 3],
    [4, 2, 2, 7, 8, 0],
]
EXAMPLE_41_OPTIMUM = 18.0


@pytest.fixture
def example41():
    return EditCostMatrix(EXAMPLE_41)


def random_instance(rng, n, m, hi=10, integer=True):
    if integer:
        c = rng.integers(0, hi, size=(n + 1, m + 1)).astype(float)
    else:
        c = rng.uniform(0, hi, size=(n + 1, m + 1))
    c[-1, -1] = 0
    return EditCostMatrix(c)


@st.composite
def edit_matrices(draw, max_n=5, max_m=5, max_value=20, integer=True):
    n = draw(st.integers(0, max_n))
    m = draw(st.integers(0, max_m))
    if integer:
        cell = st.integers(0, max_value).map(float)
    else:
        cell = st.floats(0, max_value, allow_nan=False, allow_infinity=False)
    values = draw(st.lists(cell, min_size=(n + 1) * (m + 1), max_size=(n + 1) * (m + 1)))
    c = np.array(values, dtype=float).reshape(n + 1, m + 1)
    c[-1, -1] = 0
    return EditCostMatrix(c)
