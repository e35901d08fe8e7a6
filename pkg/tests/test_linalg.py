from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from boolq.linalg import matvec, nullspace, rank, rref


def test_identity():
    rows, piv = rref([[1, 0], [0, 1]], 2)
    assert rows == [[1, 0], [0, 1]] and piv == [0, 1]


def test_dependent_rows():
    assert rank([[1, 2, 3], [2, 4, 6], [0, 0, 0]], 3) == 1


def test_nullspace_simple():
    basis = nullspace([[1, 1]], 2)
    assert basis == [[-1, 1]]


def test_empty_system():
    assert nullspace([], 3) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_bad_row_length():
    with pytest.raises(ValueError):
        rref([[1, 2]], 3)


def _fraction_rank(rows, ncols):
    m = [[Fraction(v) for v in r] for r in rows]
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


matrices = st.integers(1, 6).flatmap(
    lambda cols: st.lists(st.lists(st.integers(-3, 3), min_size=cols, max_size=cols), max_size=6)
    .map(lambda rows: (rows, cols))
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_nullspace_properties(data):
    rows, cols = data
    basis = nullspace(rows, cols)
    r = _fraction_rank(rows, cols)
    assert rank(rows, cols) == r
    assert len(basis) == cols - r
    for v in basis:
        assert any(v)
        assert all(x == 0 for x in matvec(rows, v))
    if basis:
        assert _fraction_rank(basis, cols) == len(basis)
