import pytest

from abmodules.errors import CharPolyNotSplit
from abmodules.linalg import (cinverse, det, eigenvalues, eliminate, nullspace,
                              rank, rref, smat_inverse, smat_mul, solve_in_span,
                              span_basis)
from abmodules.scalars import ONE, ZERO, Scalar
from abmodules.series import Series, parse_series

P = 10


def c(x):
    return Scalar.coerce(x)


def m(rows):
    return [[c(x) for x in r] for r in rows]


def s(text):
    return parse_series(text, P)


def test_rref_rank_nullspace():
    A = m([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    R, piv = rref(A)
    assert piv == [0, 1]
    assert rank(A) == 2
    (v,) = nullspace(A, 3)
    assert all(sum((a * x for a, x in zip(row, v)), ZERO) == ZERO for row in A)


def test_det_and_inverse():
    A = m([[2, 1], [1, "1/2+i"]])
    assert det(A) == c("2*i")
    Ai = cinverse(A)
    assert [[sum((A[i][k] * Ai[k][j] for k in range(2)), ZERO) for j in range(2)]
            for i in range(2)] == m([[1, 0], [0, 1]])


def test_eigenvalues():
    assert sorted(eigenvalues(m([[0, 1], [-1, 0]])), key=lambda z: z.im) == [c("-i"), c("i")]
    assert eigenvalues(m([["1/2", 1], [0, "1/2"]])) == [c("1/2")]  # distinct roots
    with pytest.raises(CharPolyNotSplit):
        eigenvalues(m([[0, 2], [1, 0]]))


def test_eliminate_valuations():
    A = [[s("b^2"), s("b")], [s("b^3"), s("b^2 + b^3")]]
    el = eliminate(A)
    # det = b^5
    assert el.dvals == [1, 4]
    # R A C is diagonal b^d
    D = smat_mul(smat_mul(el.R, A), el.C)
    assert D[0][1].truncate(el.prec).is_zero() and D[1][0].truncate(el.prec).is_zero()


def test_span_and_solve():
    G = [[s("1"), s("b")], [s("0"), s("b")]]
    basis = span_basis(G, 2)
    assert len(basis) == 2
    assert solve_in_span(G, [s("1"), s("0")], 2) is not None
    assert solve_in_span(G, [s("0"), s("1")], 2) is None


def test_series_matrix_inverse():
    A = [[s("1 + b"), s("b")], [s("2"), s("1")]]
    Ai = smat_inverse(A)
    I2 = smat_mul(A, Ai)
    assert I2[0][0] == Series.one(P) and I2[0][1].is_zero()
