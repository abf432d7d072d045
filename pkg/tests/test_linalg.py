from fractions import Fraction

import pytest
import sympy
from sympy import GF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, settings, strategies as st

from awb.field import Field
from awb.linalg import (Matrix, Preimage, QuotientSpace, RowReducer, Subspace, kernel_basis,
                        image_basis, vec_from_dense, vec_to_dense)

QQ = Field(0)
GF7 = Field(7)

small = st.integers(-4, 4)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


def test_field_parse_and_norm():
    assert Field.parse("Q") == QQ
    assert Field.parse("GF(5)").characteristic == 5
    with pytest.raises(ValueError):
        Field.parse("GF(6)")
    assert QQ("3/6") == Fraction(1, 2)
    assert QQ("4/2") == 2 and type(QQ("4/2")) is int
    assert GF7("1/2") == 4
    assert GF7.inv(3) == 5
    with pytest.raises(ValueError):
        QQ("abc")


def test_vec_round_trip():
    v = vec_from_dense(QQ, [0, "1/2", 0, 3])
    assert v == {1: Fraction(1, 2), 3: 3}
    assert vec_to_dense(v, 4) == [0, Fraction(1, 2), 0, 3]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    m = Matrix.from_dense(QQ, rows)
    assert m.rank() == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_and_image(rows):
    m = Matrix.from_dense(QQ, rows)
    K = kernel_basis(m)
    assert K.dim == m.ncols - m.rank()
    assert all(not m.apply(v) for v in K.basis)
    assert image_basis(m).dim == m.rank()


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_kernel_over_gf7(rows):
    m = Matrix.from_dense(GF7, rows)
    K = kernel_basis(m)
    expected = DomainMatrix.from_list(rows, GF(7)).rank()
    assert m.rank() == expected
    assert all(not m.apply(v) for v in K.basis)
    assert K.dim + m.rank() == m.ncols


def test_rref_canonical():
    a = Subspace.span(QQ, 3, [{0: 1, 1: 1}, {1: 1, 2: 1}])
    b = Subspace.span(QQ, 3, [{0: 1, 2: -1}, {0: 2, 1: 2}])
    assert a == b and hash(a) == hash(b)
    assert a.pivots == b.pivots


def test_subspace_sum_and_intersection():
    x = Subspace.span(QQ, 3, [{0: 1}, {1: 1}])
    y = Subspace.span(QQ, 3, [{1: 1}, {2: 1}])
    assert (x + y).dim == 3
    assert (x & y) == Subspace.span(QQ, 3, [{1: 1}])
    assert {1: 5} in x and {2: 1} not in x


def test_quotient_free_columns():
    s = Subspace.span(QQ, 3, [{0: 1, 2: 1}])
    q = QuotientSpace(3, s)
    assert q.free == (1, 2)
    assert q.project({0: 1}) == {1: -1}
    assert q.project(q.lift({0: 1, 1: 2})) == {0: 1, 1: 2}


def test_preimage_sections_differ_on_kernel():
    cols = [{0: 1}, {0: 1}]
    a = Preimage(QQ, 1, cols).solve({0: 1})
    b = Preimage(QQ, 1, cols, reverse=True).solve({0: 1})
    assert a != b
    assert Preimage(QQ, 1, cols).solve({0: 3}) is not None
    assert Preimage(QQ, 2, cols).solve({1: 1}) is None


def test_row_reducer_independence():
    red = RowReducer(QQ, 2)
    assert red.add({0: 1})
    assert not red.add({0: 3})
    assert red.add({0: 1, 1: 1})
    assert len(red) == 2
