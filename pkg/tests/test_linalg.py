from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitalg.errors import DimensionMismatch
from splitalg.linalg import (
    GF2,
    RATIONAL,
    Echelon,
    ExactMatrix,
    FieldSpec,
    kernel_dim,
    rank,
    solve_membership,
)


def test_field_parse():
    assert FieldSpec.parse("rational") == RATIONAL
    assert FieldSpec.parse("fp:2") == GF2
    assert str(FieldSpec.parse("fp:7")) == "fp:7"
    for bad in ("fp:4", "fp:x", "reals"):
        with pytest.raises(ValueError):
            FieldSpec.parse(bad)


def test_rank_examples():
    assert rank(ExactMatrix.identity(3)) == 3
    assert rank(ExactMatrix.from_dense([[1, 1], [1, 1]]), GF2) == 1
    # boundary of a 4-cycle: edges 01, 12, 23, 30
    d1 = ExactMatrix.from_dense([
        [-1, 0, 0, 1],
        [1, -1, 0, 0],
        [0, 1, -1, 0],
        [0, 0, 1, -1],
    ])
    assert rank(d1) == 3


def test_kernel_examples():
    assert kernel_dim(ExactMatrix.identity(3)) == 0
    for n in range(1, 6):
        assert kernel_dim(ExactMatrix.from_dense([[1] * n])) == n - 1


def test_characteristic_matters():
    M = ExactMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert rank(M, RATIONAL) == 3
    assert rank(M, GF2) == 2


def test_membership():
    cross = {("X1", "Y1"): 1, ("X1", "Y2"): -1, ("X2", "Y1"): -1, ("X2", "Y2"): 1}
    assert solve_membership({k: 3 * v for k, v in cross.items()}, [cross])
    assert not solve_membership({("X1", "Y1"): 1}, [cross])
    assert solve_membership({0: 1}, [{0: 2}], RATIONAL, width=1)
    with pytest.raises(DimensionMismatch):
        solve_membership({5: 1}, [{0: 1}], RATIONAL, width=2)


def test_matmul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        ExactMatrix.identity(2).matmul(ExactMatrix.identity(3))


def test_echelon_is_exact():
    E = Echelon(RATIONAL)
    assert E.add({0: Fraction(1, 3), 1: 1})
    assert not E.add({0: 1, 1: 3})
    assert E.contains({0: 2, 1: 6})
    assert E.rank == 1


small = st.integers(min_value=-3, max_value=3)


@st.composite
def dense(draw):
    r = draw(st.integers(1, 5))
    c = draw(st.integers(1, 5))
    return [[draw(small) for _ in range(c)] for _ in range(r)]


@settings(max_examples=60, deadline=None)
@given(dense())
def test_rank_nullity_and_transpose(data):
    M = ExactMatrix.from_dense(data)
    T = ExactMatrix.from_dense([list(col) for col in zip(*data)])
    for F in (RATIONAL, GF2, FieldSpec.prime(5)):
        r = rank(M, F)
        assert r == rank(T, F)
        assert r + kernel_dim(M, F) == M.cols
        assert r <= min(M.rows, M.cols)


@st.composite
def compatible_pair(draw):
    r, k, c = (draw(st.integers(1, 4)) for _ in range(3))
    a = [[draw(small) for _ in range(k)] for _ in range(r)]
    b = [[draw(small) for _ in range(c)] for _ in range(k)]
    return a, b


@settings(max_examples=40, deadline=None)
@given(compatible_pair())
def test_rank_of_product_bounded(pair):
    A, B = (ExactMatrix.from_dense(m) for m in pair)
    for F in (RATIONAL, GF2):
        assert rank(A.matmul(B, F), F) <= min(rank(A, F), rank(B, F))
