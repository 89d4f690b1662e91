"""Seedable generators for the three benchmark families of edit cost matrices.

``uniform-random``
    i.i.d. draws for every cell but the epsilon corner.  Real values are
    uniform on ``[lo, hi)``; with ``integer=True`` values are uniform on the
    integers ``lo..hi`` (both ends included).  The generator is numpy's
    PCG64 seeded with the 64-bit ``seed``, so a spec always produces the
    same matrix.
``product``
    ``c[i][j] = i * j`` on the whole (1-based) matrix, corner forced to 0.
``flipped-product``
    ``c[n-i+1][m-j+1] = i * j`` on the substitution block; the removal
    column repeats column m and the insertion row repeats row n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EditCostMatrix

FAMILIES = ("uniform-random", "product", "flipped-product")
DEFAULT_RANGE = (0.0, 10.0)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    m: int
    seed: int = 0
    lo: float = DEFAULT_RANGE[0]
    hi: float = DEFAULT_RANGE[1]
    integer: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"invalid value range [{self.lo}, {self.hi}]")
        if self.integer and (self.lo != int(self.lo) or self.hi != int(self.hi)):
            raise ValueError("integer draws need integral range bounds")

    def header(self) -> list[str]:
        lines = [f"family={self.family} n={self.n} m={self.m} seed={self.seed}"]
        if self.family == "uniform-random":
            kind = "integer" if self.integer else "real"
            lines.append(f"range=[{self.lo:g},{self.hi:g}] values={kind} rng=PCG64")
        return lines


def _uniform(spec: GeneratorSpec) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    shape = (spec.n + 1, spec.m + 1)
    if spec.integer:
        c = rng.integers(int(spec.lo), int(spec.hi), size=shape, endpoint=True).astype(np.float64)
    else:
        c = rng.uniform(spec.lo, spec.hi, size=shape)
    c[-1, -1] = 0.0
    return c


def _product(spec: GeneratorSpec) -> np.ndarray:
    i = np.arange(1, spec.n + 2, dtype=np.float64)
    j = np.arange(1, spec.m + 2, dtype=np.float64)
    c = np.outer(i, j)
    c[-1, -1] = 0.0
    return c


def _flipped_product(spec: GeneratorSpec) -> np.ndarray:
    n, m = spec.n, spec.m
    # Row a (1-based) of the block is (n - a + 1) times (m - b + 1); the copied
    # last row/column are that formula at a = n and b = m.
    rows = np.append(np.arange(n, 0, -1, dtype=np.float64), 1.0)
    cols = np.append(np.arange(m, 0, -1, dtype=np.float64), 1.0)
    c = np.outer(rows, cols)
    c[-1, -1] = 0.0
    return c


def generate(spec: GeneratorSpec) -> EditCostMatrix:
    if spec.family == "uniform-random":
        return EditCostMatrix(_uniform(spec))
    if spec.family == "product":
        return EditCostMatrix(_product(spec))
    return EditCostMatrix(_flipped_product(spec))
