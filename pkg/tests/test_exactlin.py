from __future__ import annotations

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from lagorbits.errors import DimensionMismatch, PreconditionError, SchemaError
from lagorbits.exactlin import (
    GF,
    QQ,
    Mat,
    Subspace,
    complement_in,
    field_from_json,
    intersect,
    kernel,
    member,
    rank,
    rref,
    solve,
    subspace_sum,
    unit,
)


def q_rows(rows):
    return Mat.from_rows(QQ, rows)


def e(n, k, field=QQ):
    return unit(field, n, k)


# --- strategies -------------------------------------------------------------

fields = st.sampled_from([QQ, GF(2), GF(3), GF(5)])
small = st.integers(-3, 3)


@st.composite
def matrices(draw, field=None, max_dim=5):
    F = draw(fields) if field is None else field
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return Mat(F, r, c, tuple(tuple(F(x) for x in row) for row in rows))


@st.composite
def subspace_pairs(draw):
    F = draw(fields)
    n = draw(st.integers(1, 6))
    vec = st.lists(small, min_size=n, max_size=n)
    A = Subspace.span(F, n, draw(st.lists(vec, max_size=4)))
    B = Subspace.span(F, n, draw(st.lists(vec, max_size=4)))
    return A, B


# --- fields and matrices ----------------------------------------------------


def test_rationals_reject_floats():
    with pytest.raises(TypeError):
        QQ(0.5)


def test_rationals_stored_in_lowest_terms():
    x = QQ("-6/4")
    assert (x.numerator, x.denominator) == (-3, 2)


def test_prime_field_rejects_composite():
    with pytest.raises(PreconditionError):
        GF(4)


def test_prime_field_arithmetic():
    F = GF(5)
    assert F(3) * F(2) == F(1)
    assert F(1) / F(2) == F(3)
    assert F("1/2") == F(3)
    assert -F(1) == F(4)


def test_field_tags_round_trip():
    assert field_from_json(QQ.to_json()) is QQ
    assert field_from_json(GF(3).to_json()) == GF(3)
    with pytest.raises(SchemaError):
        field_from_json({"kind": "Reals"})


def test_mat_json_round_trip():
    M = q_rows([[1, "1/2"], [-3, 0]])
    obj = M.to_json()
    assert obj == {"rows": 2, "cols": 2, "entries": ["1", "1/2", "-3", "0"]}
    assert Mat.from_json(obj) == M


def test_mat_is_immutable():
    M = q_rows([[1]])
    with pytest.raises(AttributeError):
        M.rows = 3


def test_inverse_and_singular():
    M = q_rows([[2, 1], [1, 1]])
    assert M @ M.inverse() == Mat.identity(QQ, 2)
    with pytest.raises(PreconditionError):
        q_rows([[1, 2], [2, 4]]).inverse()


# --- rref -------------------------------------------------------------------


def test_rref_identity():
    R, piv = rref(Mat.identity(QQ, 2))
    assert R == Mat.identity(QQ, 2) and piv == [0, 1]


def test_rref_rank_one_over_q():
    R, piv = rref(q_rows([[2, 4], [1, 2]]))
    assert R == q_rows([[1, 2], [0, 0]]) and piv == [0]


def test_rref_over_f3():
    F = GF(3)
    R, piv = rref(Mat.from_rows(F, [[1, 1], [1, 2]]))
    assert R == Mat.identity(F, 2) and piv == [0, 1]


@given(matrices())
def test_rref_is_idempotent_and_pivots_increase(M):
    R, piv = rref(M)
    assert rref(R)[0] == R
    assert piv == sorted(set(piv))
    assert rank(M) == len(piv)


# --- kernel -----------------------------------------------------------------


def test_kernel_of_zero_is_everything():
    assert kernel(Mat.zeros(QQ, 2, 2)) == Subspace.full(QQ, 2)


def test_kernel_of_identity_is_zero():
    assert kernel(Mat.identity(QQ, 3)).dim == 0


def test_kernel_of_single_row():
    K = kernel(q_rows([[1, 2]]))
    assert K == Subspace.span(QQ, 2, [(-2, 1)])
    # canonical column-echelon form: leading 1 then -1/2
    assert K.vectors() == [(mpq(1), mpq(-1, 2))]


@given(matrices())
def test_rank_nullity_and_kernel_annihilated(M):
    K = kernel(M)
    assert rank(M) + K.dim == M.cols
    for v in K.vectors():
        assert all(not x for x in M @ v)


# --- subspaces --------------------------------------------------------------


def test_intersection_examples():
    A = Subspace.span(QQ, 4, [e(4, 0), e(4, 1)])
    assert intersect(A, A) == A
    assert intersect(Subspace.span(QQ, 2, [e(2, 0)]), Subspace.span(QQ, 2, [e(2, 1)])).dim == 0
    s = tuple(x + y for x, y in zip(e(4, 0), e(4, 1)))
    X = Subspace.span(QQ, 4, [s, e(4, 2)])
    Y = Subspace.span(QQ, 4, [s, e(4, 3)])
    assert intersect(X, Y) == Subspace.span(QQ, 4, [s])


def test_intersection_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        intersect(Subspace.full(QQ, 2), Subspace.full(QQ, 3))


@given(subspace_pairs())
def test_grassmann_identity(pair):
    A, B = pair
    assert A.dim + B.dim == intersect(A, B).dim + subspace_sum(A, B).dim


@given(subspace_pairs())
def test_canonical_form_is_unique(pair):
    A, _ = pair
    again = Subspace.span(A.field, A.ambient_dim, list(reversed(A.vectors())) + A.vectors())
    assert again == A
    assert again.basis.data == A.basis.data
    assert all(member(v, again) for v in A.vectors())


def test_complement_examples():
    T = Subspace.span(QQ, 2, [e(2, 0), e(2, 1)])
    assert complement_in(Subspace.zero(QQ, 2), T) == T
    assert complement_in(T, T).dim == 0
    S = Subspace.span(QQ, 2, [(1, 1)])
    assert complement_in(S, T) == Subspace.span(QQ, 2, [e(2, 0)])


def test_complement_requires_containment():
    with pytest.raises(PreconditionError):
        complement_in(Subspace.full(QQ, 2), Subspace.span(QQ, 2, [e(2, 0)]))


@given(subspace_pairs())
def test_complement_is_direct(pair):
    A, B = pair
    T = subspace_sum(A, B)
    C = complement_in(A, T)
    assert intersect(A, C).dim == 0 and subspace_sum(A, C) == T


def test_solve_consistent_and_not():
    A = q_rows([[1, 1], [1, -1]])
    assert solve(A, (2, 0)) == (1, 1)
    assert solve(q_rows([[1, 1], [2, 2]]), (1, 3)) is None


def test_subspace_json_round_trip():
    U = Subspace.span(QQ, 3, [(1, "1/2", 0), (0, 0, 1)])
    assert Subspace.from_json(U.to_json()) == U
    assert Subspace.from_json([["1", "1/2", "0"], [0, 0, 1]], QQ, 3) == U
    with pytest.raises(SchemaError):
        Subspace.from_json({"ambient_dim": 3, "basis": [[1, 2]]})
