import random
from fractions import Fraction

import pytest

from ceikit import linalg
from ceikit.linalg import SparseMatrix, kernel_basis, quotient_rank, rank, solve
from ceikit import _echelon_py


def F(a, b=1):
    return Fraction(a, b)


def test_rank_empty():
    assert rank(SparseMatrix(0, 0)) == 0


def test_rank_identity():
    m = SparseMatrix.from_rows([[1, 0], [0, 1]])
    assert rank(m) == 2


def test_rank_dependent_rows():
    m = SparseMatrix.from_rows([[1, 2], [2, 4]])
    assert rank(m) == 1


def test_kernel_identity_empty():
    assert kernel_basis(SparseMatrix.from_rows([[1, 0], [0, 1]])) == []


def test_kernel_zero_matrix():
    assert len(kernel_basis(SparseMatrix(2, 3))) == 3


def test_kernel_rank_one():
    m = SparseMatrix.from_rows([[1, 2], [2, 4]])
    (v,) = kernel_basis(m)
    # proportional to (2, -1)
    assert v[0] * F(-1) == v[1] * F(2)
    assert m.apply(v) == [0, 0]


def test_solve_identity():
    m = SparseMatrix.from_rows([[1, 0], [0, 1]])
    assert solve(m, [3, 5]) == [3, 5]


def test_solve_scalar_half():
    m = SparseMatrix.from_rows([[2]])
    assert solve(m, [1]) == [F(1, 2)]


def test_solve_inconsistent():
    m = SparseMatrix.from_rows([[1, 1], [2, 2]])
    assert solve(m, [1, 3]) is None


def test_quotient_rank_examples():
    assert quotient_rank(3, []) == 3
    assert quotient_rank(2, [[1, 0], [0, 1]]) == 0
    assert quotient_rank(3, [[1, 1, 0], [2, 2, 0]]) == 2


def test_quotient_rank_dim_mismatch():
    with pytest.raises(ValueError):
        quotient_rank(3, [[1, 0]])


def _random_matrix(rng, rows, cols, density=0.5):
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                entries[(r, c)] = F(rng.randint(-6, 6), rng.randint(1, 4))
    return SparseMatrix(rows, cols, entries)


def test_rank_nullity_randomized():
    rng = random.Random(7)
    for _ in range(40):
        m = _random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
        assert rank(m) + len(kernel_basis(m)) == m.cols
        for v in kernel_basis(m):
            assert all(x == 0 for x in m.apply(v))


def test_solve_roundtrip_randomized():
    rng = random.Random(11)
    for _ in range(40):
        m = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        x = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(m.cols)]
        b = m.apply(x)
        y = solve(m, b)
        assert y is not None
        assert m.apply(y) == b


def _matmul(a, b):
    out = {}
    for (r, k), v in a.entries.items():
        for c in range(b.cols):
            w = b.entries.get((k, c))
            if w:
                out[(r, c)] = out.get((r, c), F(0)) + v * w
    return SparseMatrix(a.rows, b.cols, out)


def test_product_associativity_exact():
    rng = random.Random(13)
    for _ in range(15):
        a = _random_matrix(rng, 4, 3)
        b = _random_matrix(rng, 3, 5)
        c = _random_matrix(rng, 5, 2)
        assert _matmul(_matmul(a, b), c) == _matmul(a, _matmul(b, c))


def test_backends_agree():
    rng = random.Random(17)
    for _ in range(25):
        m = _random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8))
        rows = linalg._int_rows(m.row_dicts())
        got = linalg._engine.echelon([r for r in rows], m.cols)
        want = _echelon_py.echelon([r for r in rows], m.cols)
        assert got == want


def test_row_space_contains():
    rows = [{0: F(1), 1: F(2)}, {1: F(1), 2: F(1)}]
    assert linalg.row_space_contains(rows, 3, {0: F(1), 1: F(3), 2: F(1)})
    assert not linalg.row_space_contains(rows, 3, {2: F(1), 0: F(1)})
