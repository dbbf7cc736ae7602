import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from koszulkit.linalg import GF, QQ, Field, Matrix, Subspace, kernel_basis, rref, sparse_kernel, sparse_solve, subspace_ops


def test_rref_identity_and_zero():
    I = Matrix.identity(QQ, 3)
    assert rref(I) == (I, 3)
    Z = Matrix.zero(QQ, 2, 4)
    assert rref(Z) == (Z, 0)


def test_rank_of_dependent_rows():
    assert rref(Matrix.from_rows(QQ, [[1, 2], [2, 4]]))[1] == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(QQ, 4)).dim == 0
    assert kernel_basis(Matrix.zero(QQ, 2, 3)).dim == 3
    K = kernel_basis(Matrix.from_rows(GF(5), [[1, 1]]))
    assert K == Subspace.span(GF(5), 2, [[1, 4]])


def test_subspace_examples():
    F = QQ
    a = Subspace.span(F, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    b = Subspace.span(F, 4, [[0, 0, 1, 0], [0, 0, 0, 1]])
    ops = subspace_ops(a, b)
    assert ops["intersection"].dim == 0 and ops["sum"].dim == 4
    assert subspace_ops(a, a)["intersection"] == a
    p1 = Subspace.span(F, 3, [[1, 0, 0], [0, 1, 0]])
    p2 = Subspace.span(F, 3, [[1, 1, 1], [0, 1, 2]])
    assert (p1 & p2).dim == 1


def test_ambient_mismatch_rejected():
    with pytest.raises(ValueError):
        subspace_ops(Subspace.zero(QQ, 2), Subspace.zero(QQ, 3))


def test_field_parsing_and_arithmetic():
    assert Field.parse("GF(7)") == GF(7)
    assert Field.parse("QQ") == QQ
    with pytest.raises(ValueError):
        GF(6)
    F = GF(7)
    assert F(Fraction(1, 3)) * 3 % 7 == 1
    assert F.inv(3) * 3 % 7 == 1
    assert QQ.to_json(Fraction(-2, 4)) == "-1/2"


small_ints = st.integers(-3, 3)


def matrices(max_r=4, max_c=5):
    return st.integers(1, max_r).flatmap(
        lambda r: st.integers(1, max_c).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_matches_sympy(rows):
    R, rank = rref(Matrix.from_rows(QQ, rows))
    S, piv = sympy.Matrix(rows).rref()
    assert rank == len(piv)
    assert [[Fraction(int(x.p), int(x.q)) for x in S.row(i)] for i in range(S.rows)] == [list(r) for r in R.rows]


@settings(max_examples=60, deadline=None)
@given(matrices(), st.sampled_from([2, 3, 5]))
def test_rref_idempotent_and_rank_transpose(rows, p):
    for F in (QQ, GF(p)):
        M = Matrix.from_rows(F, rows)
        R, r = rref(M)
        assert rref(R) == (R, r)
        assert M.transpose().rank() == r


@settings(max_examples=40, deadline=None)
@given(matrices(3, 4), st.sampled_from([2, 3]))
def test_kernel_dimension_by_enumeration(rows, p):
    F = GF(p)
    M = Matrix.from_rows(F, rows)
    count = sum(1 for v in itertools.product(range(p), repeat=M.ncols) if not any(M.apply(v)))
    assert count == p ** kernel_basis(M).dim
    assert kernel_basis(M).dim == M.ncols - M.rank()


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_dimension_formula(r1, r2):
    n = 4
    a = Subspace.span(QQ, n, [r + [0] * (n - len(r)) for r in r1])
    b = Subspace.span(QQ, n, [r + [0] * (n - len(r)) for r in r2])
    assert a.dim + b.dim == (a + b).dim + (a & b).dim
    assert (a + b).contains(a) and a.contains(a & b)


def test_sparse_solve_and_kernel():
    F = GF(3)
    cols = [{0: 1}, {1: 1}, {0: 1, 1: 1}]
    ker = sparse_kernel(cols, F)
    assert len(ker) == 1
    x = sparse_solve(cols, {0: 2, 1: 1}, F)
    total = {}
    for c, v in x.items():
        for k, y in cols[c].items():
            total[k] = (total.get(k, 0) + v * y) % 3
    assert {k: v for k, v in total.items() if v} == {0: 2, 1: 1}
    assert sparse_solve([{0: 1}], {1: 1}, F) is None
