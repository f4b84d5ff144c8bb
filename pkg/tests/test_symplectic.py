from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lagorbits.errors import PreconditionError
from lagorbits.exactlin import GF, QQ, Mat, Subspace, kernel, unit
from lagorbits.sampling import make_rng, random_lagrangian, random_symplectic
from lagorbits.symplectic import (
    SymplecticSpace,
    extend_to_darboux,
    in_sp_lie_algebra,
    is_isotropic,
    is_lagrangian,
    is_symplectic_map,
    lift,
    perp,
    project,
    pull_subspace,
    push_subspace,
    reduce,
    sp_lie_algebra_basis,
    std_space,
    transvection,
)

seeds = st.integers(0, 2**32)


def vecsum(*vs):
    return tuple(sum(x) for x in zip(*vs))


def basis(n):
    """(e_1..e_n, f_1..f_n) of std_space(n)."""
    N = 2 * n
    return [unit(QQ, N, a) for a in range(n)], [unit(QQ, N, n + a) for a in range(n)]


def combo(rng, vectors, coeffs, dim):
    """A random linear combination, one coefficient per vector."""
    cs = [rng.choice(coeffs) for _ in vectors]
    return tuple(sum(c * v[k] for c, v in zip(cs, vectors)) for k in range(dim))


def random_subspace(V, rng, k):
    vecs = [tuple(rng.choice((-1, 0, 0, 1, 2)) for _ in range(V.dim)) for _ in range(k)]
    return Subspace.span(V.field, V.dim, vecs)


# --- std_space --------------------------------------------------------------


def test_std_space_rank_one():
    assert std_space(1).gram == Mat.from_rows(QQ, [[0, 1], [-1, 0]])


def test_std_space_rank_zero():
    V = std_space(0)
    assert V.dim == 0


def test_std_space_pairing():
    V = std_space(2)
    (e1, e2), (f1, f2) = basis(2)
    assert V.omega(e2, f2) == 1 and V.omega(f2, e2) == -1
    assert V.omega(e1, e2) == V.omega(f1, f2) == V.omega(e1, f2) == 0


def test_degenerate_gram_rejected():
    with pytest.raises(PreconditionError):
        SymplecticSpace(QQ, Mat.zeros(QQ, 2, 2))


# --- perp and predicates ----------------------------------------------------


def test_perp_examples():
    V1 = std_space(1)
    L = Subspace.span(QQ, 2, [unit(QQ, 2, 0)])
    assert perp(V1, L) == L
    V = std_space(2)
    assert perp(V, Subspace.full(QQ, 4)).dim == 0
    (e1, e2), (f1, f2) = basis(2)
    assert perp(V, Subspace.span(QQ, 4, [e1])) == Subspace.span(QQ, 4, [e1, e2, f2])


def test_lagrangian_examples():
    V = std_space(2)
    (e1, e2), (f1, f2) = basis(2)
    assert is_lagrangian(V, Subspace.span(QQ, 4, [e1, e2]))
    assert not is_isotropic(V, Subspace.span(QQ, 4, [e1, f1]))
    assert is_lagrangian(V, Subspace.span(QQ, 4, [vecsum(e1, f2), vecsum(e2, f1)]))


@given(seeds, st.integers(1, 4))
def test_double_perp_and_dimension(seed, n):
    rng = make_rng(seed)
    V = std_space(n)
    U = random_subspace(V, rng, rng.randrange(0, V.dim + 1))
    P = perp(V, U)
    assert U.dim + P.dim == V.dim
    assert perp(V, P) == U


@given(seeds, st.integers(1, 3))
def test_lagrangian_three_ways(seed, n):
    V = std_space(n)
    U = random_lagrangian(V, make_rng(seed))
    assert is_lagrangian(V, U)
    assert is_isotropic(V, U) and 2 * U.dim == V.dim and perp(V, U) == U


# --- maps and Lie algebra ---------------------------------------------------


def test_symplectic_map_examples():
    V = std_space(1)
    assert is_symplectic_map(V, Mat.identity(QQ, 2))
    assert is_symplectic_map(V, Mat.diag(QQ, [2, "1/2"]))
    assert in_sp_lie_algebra(V, Mat.zeros(QQ, 2, 2))
    assert not in_sp_lie_algebra(V, Mat.diag(QQ, [1, 1]))


@given(seeds, st.integers(1, 3))
def test_transvection_products_are_symplectic(seed, n):
    V = std_space(n)
    assert is_symplectic_map(V, random_symplectic(V, make_rng(seed)))


def test_transvection_over_prime_field():
    F = GF(3)
    V = std_space(2, F)
    T = transvection(V, (1, 2, 0, 1), 2)
    assert is_symplectic_map(V, T)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lie_algebra_basis(n):
    V = std_space(n)
    B = sp_lie_algebra_basis(V)
    assert len(B) == n * (2 * n + 1)
    assert all(in_sp_lie_algebra(V, X) for X in B)
    flat = Mat.from_rows(QQ, [[x for row in X.data for x in row] for X in B])
    assert flat.rank() == len(B)


def test_darboux_extension():
    V = std_space(3)
    (e1, e2, e3), (f1, f2, f3) = basis(3)
    iso = [vecsum(e1, e2), e3]
    pairs = extend_to_darboux(V, isotropic=iso)
    assert [p[0] for p in pairs[:2]] == iso
    for a, (x, y) in enumerate(pairs):
        for b, (z, w) in enumerate(pairs):
            assert V.omega(x, w) == (1 if a == b else 0)
            assert V.omega(x, z) == 0 and V.omega(y, w) == 0


# --- reduction --------------------------------------------------------------


def test_reduce_by_zero_is_identity():
    V = std_space(2)
    R = reduce(V, Subspace.zero(QQ, 4))
    assert R.reduced.gram == V.gram


def test_reduce_by_e1():
    V = std_space(2)
    (e1, e2), (f1, f2) = basis(2)
    R = reduce(V, Subspace.span(QQ, 4, [e1]))
    assert R.reduced.gram == Mat.from_rows(QQ, [[0, 1], [-1, 0]])
    assert R.section.columns() == [e2, f2]


def test_reduce_rank_one_by_line_is_trivial():
    V = std_space(1)
    R = reduce(V, Subspace.span(QQ, 2, [unit(QQ, 2, 0)]))
    assert R.dim == 0


def test_reduce_requires_isotropic():
    V = std_space(1)
    with pytest.raises(PreconditionError):
        reduce(V, Subspace.full(QQ, 2))


def test_project_lift_push():
    V = std_space(2)
    (e1, e2), (f1, f2) = basis(2)
    U = Subspace.span(QQ, 4, [e1])
    R = reduce(V, U)
    for c in range(R.dim):
        x = unit(QQ, R.dim, c)
        assert project(R, lift(R, x)) == x
    assert push_subspace(R, U).dim == 0
    pushed = push_subspace(R, Subspace.span(QQ, 4, [e1, e2]))
    assert pushed == Subspace.span(QQ, 2, [unit(QQ, 2, 0)])
    with pytest.raises(PreconditionError):
        project(R, f1)


@given(seeds, st.integers(1, 4))
def test_reduction_preserves_pairing(seed, n):
    rng = make_rng(seed)
    V = std_space(n)
    L = random_lagrangian(V, rng)
    vs = L.vectors()
    U = Subspace.span(QQ, V.dim, vs[: rng.randrange(0, n + 1)])
    R = reduce(V, U)
    Up = R.core_perp.vectors()
    for _ in range(4):
        x = combo(rng, Up, (-1, 0, 2), V.dim)
        y = combo(rng, Up, (-1, 1, 3), V.dim)
        assert R.reduced.omega(project(R, x), project(R, y)) == V.omega(x, y)
    # L contains U, so it pushes to a Lagrangian of the reduced space
    assert is_lagrangian(R.reduced, push_subspace(R, L))
    assert pull_subspace(R, push_subspace(R, L)) == L


@given(seeds, st.integers(1, 3))
def test_push_detects_lagrangians(seed, n):
    """U ⊆ S ⊆ U^⊥ is Lagrangian in V iff its image is Lagrangian after reduction."""
    rng = make_rng(seed)
    V = std_space(n)
    U = Subspace.span(QQ, V.dim, random_lagrangian(V, rng).vectors()[:1])
    R = reduce(V, U)
    core = R.core_perp.vectors()
    extra = [combo(rng, core, (-1, 0, 1), V.dim) for _ in range(rng.randrange(0, n + 1))]
    S = Subspace.span(QQ, V.dim, U.vectors() + extra)
    assert is_lagrangian(V, S) == is_lagrangian(R.reduced, push_subspace(R, S))


def test_kernel_agrees_with_perp():
    V = std_space(2)
    (e1, _), _ = basis(2)
    K = kernel(Mat.from_rows(QQ, [V.form_row(e1)]))
    assert K == perp(V, Subspace.span(QQ, 4, [e1]))
