# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _echelon_py: fraction-free sparse row echelon.

Same row representation ((cols, vals) with primitive int vals) and the same
pivot rule, so the two backends are interchangeable; see
benchmarks/bench_linalg.py for the speed comparison.
"""

from math import gcd

BACKEND = "compiled"


cdef _strip(list cols, list vals):
    cdef Py_ssize_t i, n = len(vals)
    g = 0
    for i in range(n):
        g = gcd(g, vals[i])
        if g == 1:
            return cols, vals
    if g > 1:
        for i in range(n):
            vals[i] = vals[i] // g
    return cols, vals


def combine(list cols_a, list vals_a, a, list cols_b, list vals_b, b):
    cdef list cols = []
    cdef list vals = []
    cdef Py_ssize_t i = 0, j = 0
    cdef Py_ssize_t na = len(cols_a), nb = len(cols_b)
    cdef Py_ssize_t ca, cb
    while i < na and j < nb:
        ca = cols_a[i]
        cb = cols_b[j]
        if ca < cb:
            cols.append(ca)
            vals.append(a * vals_a[i])
            i += 1
        elif cb < ca:
            cols.append(cb)
            vals.append(b * vals_b[j])
            j += 1
        else:
            v = a * vals_a[i] + b * vals_b[j]
            if v:
                cols.append(ca)
                vals.append(v)
            i += 1
            j += 1
    while i < na:
        cols.append(cols_a[i])
        vals.append(a * vals_a[i])
        i += 1
    while j < nb:
        cols.append(cols_b[j])
        vals.append(b * vals_b[j])
        j += 1
    return _strip(cols, vals)


def echelon(rows, Py_ssize_t ncols):
    cdef dict pending = {}
    cdef list pivot_cols = []
    cdef list out_rows = []
    cdef Py_ssize_t col, idx, best
    cdef list bucket
    for cols, vals in rows:
        if cols:
            pending.setdefault(cols[0], []).append((cols, vals))
    for col in range(ncols + 1):
        bucket = <list> pending.pop(col, None)
        if bucket is None or not bucket:
            continue
        best = 0
        best_key = None
        for idx in range(len(bucket)):
            vals = (<tuple> bucket[idx])[1]
            key = (abs(vals[0]).bit_length(), len(vals), idx)
            if best_key is None or key < best_key:
                best_key = key
                best = idx
        pcols, pvals = bucket.pop(best)
        pivot_cols.append(col)
        out_rows.append((pcols, pvals))
        p = pvals[0]
        for item in bucket:
            cols, vals = <tuple> item
            v = vals[0]
            g = gcd(p, v)
            ncols_, nvals_ = combine(cols, vals, p // g, pcols, pvals, -(v // g))
            if ncols_:
                pending.setdefault(ncols_[0], []).append((ncols_, nvals_))
    return pivot_cols, out_rows
