"""Pure-Python integer row-echelon kernel.

Rows are primitive integer vectors in sparse form: a pair (cols, vals) of
parallel lists, cols strictly increasing, vals nonzero ints with gcd 1.
Fraction-free elimination keeps every intermediate integral; each combined
row is stripped to its content so coefficients stay small.

This module has a compiled twin (_echelon_cy) with the same interface.
"""

from math import gcd

BACKEND = "pure"


def _strip(cols, vals):
    g = 0
    for v in vals:
        g = gcd(g, v)
        if g == 1:
            return cols, vals
    if g > 1:
        vals = [v // g for v in vals]
    return cols, vals


def combine(cols_a, vals_a, a, cols_b, vals_b, b):
    """Sparse merge a*rowA + b*rowB, stripped to primitive form."""
    cols = []
    vals = []
    i = 0
    j = 0
    na = len(cols_a)
    nb = len(cols_b)
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


def echelon(rows, ncols):
    """Row echelon form of primitive integer rows.

    Returns (pivot_cols, out_rows); out_rows[i] has leading column
    pivot_cols[i], pivot columns strictly increasing.  Pivot rows are chosen
    by smallest leading-coefficient bit size to limit growth.
    """
    pending = {}
    for cols, vals in rows:
        if cols:
            pending.setdefault(cols[0], []).append((cols, vals))
    pivot_cols = []
    out_rows = []
    for col in range(ncols + 1):
        bucket = pending.pop(col, None)
        if not bucket:
            continue
        best = 0
        best_key = None
        for idx, (cols, vals) in enumerate(bucket):
            key = (abs(vals[0]).bit_length(), len(cols), idx)
            if best_key is None or key < best_key:
                best_key = key
                best = idx
        pcols, pvals = bucket.pop(best)
        pivot_cols.append(col)
        out_rows.append((pcols, pvals))
        p = pvals[0]
        for cols, vals in bucket:
            v = vals[0]
            g = gcd(p, v)
            ncols_, nvals_ = combine(cols, vals, p // g, pcols, pvals, -(v // g))
            if ncols_:
                pending.setdefault(ncols_[0], []).append((ncols_, nvals_))
    return pivot_cols, out_rows
