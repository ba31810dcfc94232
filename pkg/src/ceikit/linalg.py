"""Exact sparse linear algebra over the rationals.

Everything downstream (homology ranks, nondegeneracy tests, triangular
solves) reduces to the four operations here: rank, kernel_basis, solve and
quotient_rank.  Entries are fractions.Fraction throughout; there is no
floating point anywhere in the package.

The elimination engine works on primitive integer rows.  A compiled version
is used when the _echelon_cy extension was built; set CEIKIT_FORCE_PURE=1 to
force the pure-Python twin.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd, lcm

if os.environ.get("CEIKIT_FORCE_PURE"):
    from ceikit import _echelon_py as _engine
else:
    try:
        from ceikit import _echelon_cy as _engine  # type: ignore[attr-defined]
    except ImportError:
        from ceikit import _echelon_py as _engine

BACKEND = _engine.BACKEND

ZERO = Fraction(0)
ONE = Fraction(1)


class SparseMatrix:
    """Immutable sparse matrix over Q; no zero entries are stored."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
                v = Fraction(v)
                if v:
                    clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, row_vectors, cols=None):
        rows = len(row_vectors)
        if cols is None:
            cols = max((len(rv) for rv in row_vectors), default=0)
        entries = {}
        for r, rv in enumerate(row_vectors):
            for c, v in enumerate(rv):
                if v:
                    entries[(r, c)] = Fraction(v)
        return cls(rows, cols, entries)

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def apply(self, vec):
        """Matrix-vector product, vec of length self.cols."""
        out = [ZERO] * self.rows
        for (r, c), v in self.entries.items():
            out[r] += v * vec[c]
        return out

    def transpose(self):
        return SparseMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, SparseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"


def _int_rows(row_dicts):
    """Clear denominators and strip content; sparse primitive integer rows."""
    out = []
    for rd in row_dicts:
        if not rd:
            continue
        items = sorted(rd.items())
        den = 1
        for _, v in items:
            den = lcm(den, v.denominator)
        vals = [int(v * den) for _, v in items]
        g = 0
        for v in vals:
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            vals = [v // g for v in vals]
        out.append(([c for c, _ in items], vals))
    return out


def _echelon_fractions(row_dicts, ncols):
    """Echelon form back in Fraction rows, sorted by pivot column."""
    pivots, int_rows = _engine.echelon(_int_rows(row_dicts), ncols)
    frac_rows = []
    for cols, vals in int_rows:
        frac_rows.append({c: Fraction(v) for c, v in zip(cols, vals)})
    return pivots, frac_rows


def _rref(row_dicts, ncols):
    """Reduced row echelon form: pivot entries 1, pivots alone in column."""
    pivots, rows = _echelon_fractions(row_dicts, ncols)
    for i in range(len(rows) - 1, -1, -1):
        p = pivots[i]
        inv = 1 / rows[i][p]
        rows[i] = {c: v * inv for c, v in rows[i].items()}
        for j in range(i):
            factor = rows[j].get(p)
            if factor:
                rj = rows[j]
                for c, v in rows[i].items():
                    w = rj.get(c, ZERO) - factor * v
                    if w:
                        rj[c] = w
                    else:
                        rj.pop(c, None)
    return pivots, rows


def rank(m: SparseMatrix) -> int:
    pivots, _ = _engine.echelon(_int_rows(m.row_dicts()), m.cols)
    return len(pivots)


def kernel_basis(m: SparseMatrix):
    """Exact basis of the null space; len == cols - rank."""
    pivots, rows = _rref(m.row_dicts(), m.cols)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [ZERO] * m.cols
        vec[f] = ONE
        for p, row in zip(pivots, rows):
            v = row.get(f)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def solve(m: SparseMatrix, b):
    """One exact solution of m x = b, or None when inconsistent.

    Free variables are set to zero, so the result is deterministic in the
    column order.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    rows = m.row_dicts()
    aug = m.cols
    for r, v in enumerate(b):
        v = Fraction(v)
        if v:
            rows[r][aug] = v
    pivots, rref_rows = _rref(rows, aug + 1)
    if aug in pivots:
        return None
    x = [ZERO] * m.cols
    for p, row in zip(pivots, rref_rows):
        x[p] = row.get(aug, ZERO)
    return x


def row_space_contains(row_dicts, ncols, vec_dict):
    """Whether vec lies in the span of the given row vectors."""
    pivots, rows = _rref(row_dicts, ncols)
    residue = dict(vec_dict)
    for p, row in zip(pivots, rows):
        factor = residue.get(p)
        if factor:
            for c, v in row.items():
                w = residue.get(c, ZERO) - factor * v
                if w:
                    residue[c] = w
                else:
                    residue.pop(c, None)
    return not residue


def quotient_rank(space_dim: int, subspace) -> int:
    """dim(V/U) for U spanned by the given vectors of length space_dim."""
    rows = []
    for vec in subspace:
        if len(vec) != space_dim:
            raise ValueError("subspace vector length mismatch")
        rd = {c: Fraction(v) for c, v in enumerate(vec) if v}
        rows.append(rd)
    pivots, _ = _echelon_fractions(rows, space_dim)
    return space_dim - len(pivots)
