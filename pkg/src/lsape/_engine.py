"""Compiled inner loops of the augmenting-path search.

All indices are 0-based.  Row ``n_rows`` and column ``n_cols`` stand for
epsilon, ``-1`` marks an unassigned element.  Scratch arrays are owned by
the caller so every allocation stays visible to Python-level tooling.

The set of rows is encoded by the permutation ``perm`` (with inverse
``pos``) split into three contiguous regions::

    perm[:su_end]        rows whose assigned column is in the tree
    perm[su_end:lu_end]  labelled rows waiting to be expanded (FIFO)
    perm[lu_end:]        rows not yet reached at zero reduced cost
"""

import numpy as np
from numba import njit

UNASSIGNED = -1
NO_PATH = -2

# slots of the int64 counters array
AUGMENTATIONS, DUAL_UPDATES, ZERO_DELTA_UPDATES, MAX_TREE_COLUMNS, MAX_TREE_ROWS = range(5)
N_COUNTERS = 5


@njit(cache=True)
def _label(perm, pos, lu_end, row):
    at = pos[row]
    other = perm[lu_end]
    perm[lu_end] = row
    perm[at] = other
    pos[row] = lu_end
    pos[other] = at


@njit(cache=True)
def _label_zeros(zeros, nz, col_of_row, n_cols, perm, pos, lu_end):
    """Handle rows that just reached zero reduced cost, by increasing index.

    Returns ``(sink, lu_end)``: the smallest row that is unassigned or
    removed, or -1 after labelling every row.
    """
    for a in range(1, nz):  # insertion sort; nz is almost always tiny
        x = zeros[a]
        b = a - 1
        while b >= 0 and zeros[b] > x:
            zeros[b + 1] = zeros[b]
            b -= 1
        zeros[b + 1] = x
    for a in range(nz):
        col = col_of_row[zeros[a]]
        if col == UNASSIGNED or col == n_cols:
            return zeros[a], lu_end
    for a in range(nz):
        _label(perm, pos, lu_end, zeros[a])
        lu_end += 1
    return -1, lu_end


@njit(cache=True)
def _record(counters, n_sv, su_end):
    if n_sv > counters[MAX_TREE_COLUMNS]:
        counters[MAX_TREE_COLUMNS] = n_sv
    if su_end > counters[MAX_TREE_ROWS]:
        counters[MAX_TREE_ROWS] = su_end


@njit(cache=True)
def grow_tree(k, C, n_rows, n_cols, row_of_col, col_of_row, u, v, tol, epsilon,
              pi, pred, perm, pos, sv, zeros, counters):
    """Search an augmenting path rooted at the unassigned column ``k``.

    ``u`` and ``v`` are updated in place.  Returns ``(sink_row, sink_col)``:
    ``sink_row == n_rows`` closes the path by inserting ``sink_col``;
    otherwise the path ends at row ``sink_row``.  ``(NO_PATH, -1)`` means
    no path exists, which valid input never produces.
    """
    for r in range(n_rows):
        pi[r] = np.inf
        pred[r] = UNASSIGNED
        perm[r] = r
        pos[r] = r
    su_end = 0
    lu_end = 0
    n_sv = 0
    j = k
    while True:
        sv[n_sv] = j
        n_sv += 1
        if epsilon and row_of_col[j] != n_rows and C[n_rows, j] - v[j] <= tol:
            _record(counters, n_sv, su_end)
            return n_rows, j

        nz = 0
        vj = v[j]
        for p in range(lu_end, n_rows):
            i = perm[p]
            red = C[i, j] - u[i] - vj
            if red < pi[i]:
                pi[i] = red
                pred[i] = j
                if red <= tol:
                    zeros[nz] = i
                    nz += 1
        if nz:
            sink, lu_end = _label_zeros(zeros, nz, col_of_row, n_cols, perm, pos, lu_end)
            if sink >= 0:
                _record(counters, n_sv, su_end)
                return sink, -1

        if su_end == lu_end:
            delta_s = np.inf
            for p in range(lu_end, n_rows):
                if pi[perm[p]] < delta_s:
                    delta_s = pi[perm[p]]
            delta_e = np.inf
            closing = -1
            if epsilon:
                for t in range(n_sv):
                    col = sv[t]
                    slack = C[n_rows, col] - v[col]
                    if slack < delta_e or (slack == delta_e and col < closing):
                        delta_e = slack
                        closing = col
            delta = min(delta_s, delta_e)
            if delta == np.inf:
                return NO_PATH, -1
            counters[DUAL_UPDATES] += 1
            if delta == 0:
                counters[ZERO_DELTA_UPDATES] += 1
            for t in range(n_sv):
                v[sv[t]] += delta
            for p in range(lu_end):
                u[perm[p]] -= delta
            if delta_e <= delta_s:
                _record(counters, n_sv, su_end)
                return n_rows, closing
            nz = 0
            for p in range(lu_end, n_rows):
                i = perm[p]
                pi[i] -= delta
                if pi[i] <= tol:
                    zeros[nz] = i
                    nz += 1
            if nz:
                sink, lu_end = _label_zeros(zeros, nz, col_of_row, n_cols, perm, pos, lu_end)
                if sink >= 0:
                    _record(counters, n_sv, su_end)
                    return sink, -1

        i = perm[su_end]
        su_end += 1
        j = col_of_row[i]


@njit(cache=True)
def flip_path(sink_row, sink_col, pred, row_of_col, col_of_row, k, n_rows):
    """Swap assigned and unassigned edges back from the sink to column ``k``.

    Returns False when ``pred`` does not lead back to ``k``.
    """
    if sink_row == n_rows:
        j = sink_col
        i = row_of_col[j]
        row_of_col[j] = n_rows
    else:
        i = sink_row
        j = -1
    steps = 0
    while j != k:
        if i < 0 or i >= n_rows or steps > n_rows:
            return False
        j = pred[i]
        if j < 0:
            return False
        col_of_row[i] = j
        previous = row_of_col[j]
        row_of_col[j] = i
        i = previous
        steps += 1
    return True


@njit(cache=True)
def assign_columns(C, n_rows, n_cols, row_of_col, col_of_row, u, v, tol, epsilon,
                   pi, pred, perm, pos, sv, zeros, counters):
    """Augment every unassigned column in increasing order.

    Returns -1 on success, otherwise the column whose augmentation failed.
    """
    for k in range(n_cols):
        if row_of_col[k] != UNASSIGNED:
            continue
        sink_row, sink_col = grow_tree(k, C, n_rows, n_cols, row_of_col, col_of_row, u, v, tol,
                                       epsilon, pi, pred, perm, pos, sv, zeros, counters)
        if sink_row == NO_PATH:
            return k
        if not flip_path(sink_row, sink_col, pred, row_of_col, col_of_row, k, n_rows):
            return k
        counters[AUGMENTATIONS] += 1
    return -1
