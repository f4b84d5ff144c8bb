"""Symplectic spaces, isotropic and Lagrangian subspaces, symplectic reduction.

A space is a Gram matrix ``G`` with ``Ω(x, y) = xᵀ G y``.  The standard
space of rank ``n`` uses the ordered basis ``e_1..e_n, f_1..f_n`` with
``Ω(e_i, f_j) = δ_ij``.

Quotients ``U^⊥/U`` are represented by sections: a fixed complement of
``U`` inside ``U^⊥`` (chosen by :func:`~lagorbits.exactlin.complement_basis`),
whose columns are the coordinates of the reduced space.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import DimensionMismatch, PreconditionError, ShapeError
from .exactlin import QQ, Mat, Subspace, Vector, complement_basis, kernel, rref, solve, unit


@dataclass(frozen=True)
class SymplecticSpace:
    field: object
    gram: Mat

    def __post_init__(self):
        G = self.gram
        if not G.is_square():
            raise ShapeError("Gram matrix must be square")
        if G.rows % 2:
            raise ShapeError("symplectic spaces have even dimension")
        for a in range(G.rows):
            if G[a, a]:
                raise PreconditionError("Gram matrix is not alternating")
            for b in range(a + 1, G.rows):
                if G[a, b] + G[b, a]:
                    raise PreconditionError("Gram matrix is not antisymmetric")
        if G.rank() != G.rows:
            raise PreconditionError("Gram matrix is degenerate")

    @property
    def dim(self) -> int:
        return self.gram.rows

    @property
    def half(self) -> int:
        return self.gram.rows // 2

    def omega(self, x: Sequence, y: Sequence):
        return _bil(self.gram, x, y)

    def form_row(self, x: Sequence) -> Vector:
        """The functional ``Ω(x, ·)`` as a row vector."""
        z = self.field.zero
        G = self.gram.data
        n = self.dim
        return tuple(_sum((x[a] * G[a][b] for a in range(n) if x[a] and G[a][b]), z) for b in range(n))

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "dim": self.dim, "gram": self.gram.to_json()}


def _sum(it, z):
    s = z
    for t in it:
        s = s + t
    return s


def _bil(G: Mat, x, y):
    z = G.field.zero
    s = z
    for a, xa in enumerate(x):
        if xa:
            row = G.data[a]
            for b, yb in enumerate(y):
                if yb and row[b]:
                    s = s + xa * row[b] * yb
    return s


def std_gram(n: int, field=QQ) -> Mat:
    z, o = field.zero, field.one
    data = [[z] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        data[i][n + i] = o
        data[n + i][i] = -o
    return Mat(field, 2 * n, 2 * n, tuple(tuple(r) for r in data))


def std_space(n: int, field=QQ) -> SymplecticSpace:
    if n < 0:
        raise PreconditionError("rank must be nonnegative")
    V = SymplecticSpace(field, std_gram(n, field))
    for i in range(n):
        for j in range(n):
            ei, fj = unit(field, 2 * n, i), unit(field, 2 * n, n + j)
            assert V.omega(ei, fj) == (1 if i == j else 0)
    return V


def _check(V: SymplecticSpace, U: Subspace):
    if U.ambient_dim != V.dim or U.field != V.field:
        raise DimensionMismatch("subspace does not live in this symplectic space")


def perp(V: SymplecticSpace, U: Subspace) -> Subspace:
    """``{v : Ω(v, u) = 0 for all u in U}``."""
    _check(V, U)
    if U.dim == 0:
        return Subspace.full(V.field, V.dim)
    rows = [V.form_row(u) for u in U.vectors()]
    return kernel(Mat(V.field, len(rows), V.dim, tuple(rows)))


def is_isotropic(V: SymplecticSpace, U: Subspace) -> bool:
    _check(V, U)
    vs = U.vectors()
    return all(not V.omega(vs[a], vs[b]) for a in range(len(vs)) for b in range(a + 1, len(vs)))


def is_lagrangian(V: SymplecticSpace, U: Subspace) -> bool:
    result = U.dim * 2 == V.dim and is_isotropic(V, U)
    assert result == (perp(V, U) == U)
    return result


def is_symplectic_map(V: SymplecticSpace, g: Mat) -> bool:
    if g.shape != (V.dim, V.dim):
        raise ShapeError("map must be square of the space's dimension")
    return g.T @ V.gram @ g == V.gram


def in_sp_lie_algebra(V: SymplecticSpace, X: Mat) -> bool:
    if X.shape != (V.dim, V.dim):
        raise ShapeError("matrix must be square of the space's dimension")
    return (X.T @ V.gram + V.gram @ X).is_zero()


def sp_lie_algebra_basis(V: SymplecticSpace) -> list[Mat]:
    """Basis ``G⁻¹ S`` of sp(V), S running over the symmetric matrix units."""
    N = V.dim
    Ginv = V.gram.inverse()
    z, o = V.field.zero, V.field.one
    out = []
    for a in range(N):
        for b in range(a, N):
            S = [[z] * N for _ in range(N)]
            S[a][b] = o
            S[b][a] = o
            out.append(Ginv @ Mat(V.field, N, N, tuple(tuple(r) for r in S)))
    return out


def stabilizer_rank(V: SymplecticSpace, basis: list[Mat], U: Subspace) -> int:
    """Rank of ``X ↦ (Ω(u_a, X u_b))_{a≤b}`` on span(basis), U Lagrangian.

    For U Lagrangian, ``X U ⊆ U`` iff every ``Ω(u_a, X u_b)`` vanishes, so the
    stabilizer of U in span(basis) has dimension ``len(basis) - rank``.  Only
    ``a ≤ b`` is used: the expression is symmetric when X lies in sp(V).
    """
    us = U.vectors()
    rows_u = [V.form_row(u) for u in us]
    images = [[X @ w for w in us] for X in basis]
    z = V.field.zero
    eqs = []
    for a in range(len(us)):
        for b in range(a, len(us)):
            eqs.append(tuple(_sum((x * y for x, y in zip(rows_u[a], img[b]) if x and y), z) for img in images))
    if not eqs or not basis:
        return 0
    return Mat(V.field, len(eqs), len(basis), tuple(eqs)).rank()


def transvection(V: SymplecticSpace, v: Sequence, a=1) -> Mat:
    """``x ↦ x + a Ω(v, x) v``; symplectic for every v and a."""
    a = V.field(a)
    row = V.form_row(tuple(V.field(x) for x in v))
    v = tuple(V.field(x) for x in v)
    I = Mat.identity(V.field, V.dim)
    return I + Mat(V.field, V.dim, V.dim, tuple(tuple(a * vi * r for r in row) for vi in v))


def extend_to_darboux(V: SymplecticSpace, pairs=(), isotropic=()) -> list[tuple[Vector, Vector]]:
    """Complete a partial symplectic basis.

    ``pairs`` are hyperbolic pairs (Ω(e_a, f_b) = δ, Ω(e,e') = Ω(f,f') = 0)
    that are kept as the first entries; ``isotropic`` spans an isotropic
    subspace orthogonal to them, and each of its vectors becomes the ``e`` of
    the following pairs.  Remaining pairs are chosen greedily from the
    canonical basis of the leftover orthogonal complement.
    """
    F = V.field
    chosen = [(tuple(F(x) for x in e), tuple(F(x) for x in f)) for e, f in pairs]
    iso = [tuple(F(x) for x in u) for u in isotropic]
    for a, (e, f) in enumerate(chosen):
        if V.omega(e, f) != 1:
            raise PreconditionError("given pairs are not hyperbolic")
        for e2, f2 in chosen[a + 1:]:
            if V.omega(e, e2) or V.omega(f, f2) or V.omega(e, f2) or V.omega(f, e2):
                raise PreconditionError("given pairs are not mutually orthogonal")
        for u in iso:
            if V.omega(e, u) or V.omega(f, u):
                raise PreconditionError("isotropic vectors must be orthogonal to the given pairs")
    for k, u in enumerate(iso):
        rows, rhs = [], []
        for e, f in chosen:
            rows += [V.form_row(e), V.form_row(f)]
            rhs += [F.zero, F.zero]
        rows.append(V.form_row(u))
        rhs.append(F.one)
        for u2 in iso[k + 1:]:
            rows.append(V.form_row(u2))
            rhs.append(F.zero)
        w = solve(Mat(F, len(rows), V.dim, tuple(rows)), rhs)
        if w is None:
            raise PreconditionError("vectors are not independent and isotropic")
        chosen.append((u, w))
    while len(chosen) < V.half:
        used = Subspace.span(F, V.dim, [x for pr in chosen for x in pr])
        W = perp(V, used).vectors()
        x = W[0]
        for y in W[1:]:
            c = V.omega(x, y)
            if c:
                chosen.append((x, tuple(t / c for t in y)))
                break
        else:  # pragma: no cover - W is symplectic
            raise AssertionError("orthogonal complement is degenerate")
    return chosen


def darboux_matrix(pairs: list[tuple[Vector, Vector]], field=QQ) -> Mat:
    """Columns ``e_1..e_n, f_1..f_n`` of a symplectic basis."""
    return Mat.from_cols(field, [e for e, _ in pairs] + [f for _, f in pairs])


# ---------------------------------------------------------------------------
# reduction


@dataclass(frozen=True)
class ReducedSpace:
    parent: SymplecticSpace
    core: Subspace
    section: Mat
    reduced: SymplecticSpace
    core_perp: Subspace
    _rows: tuple = dc_field(repr=False)
    _proj: Mat = dc_field(repr=False)

    @property
    def dim(self) -> int:
        return self.reduced.dim


def reduce(V: SymplecticSpace, U: Subspace) -> ReducedSpace:
    """Symplectic reduction ``U^⊥/U`` with the deterministic section."""
    _check(V, U)
    if not is_isotropic(V, U):
        raise PreconditionError("can only reduce by an isotropic subspace")
    Up = perp(V, U)
    sec = complement_basis(U, Up)
    F = V.field
    section = Mat.from_cols(F, sec, rows=V.dim)
    red_gram = section.T @ V.gram @ section
    reduced = SymplecticSpace(F, red_gram)
    frame = U.basis.hstack(section)
    # a square invertible row-selection of the frame gives coordinates
    _, rows = rref(frame.T)
    sub = frame.submatrix(rows, range(frame.cols))
    inv = sub.inverse() if frame.cols else Mat(F, 0, 0, ())
    proj = inv.submatrix(range(U.dim, frame.cols), range(len(rows)))
    return ReducedSpace(V, U, section, reduced, Up, tuple(rows), proj)


def project(R: ReducedSpace, v: Sequence) -> Vector:
    """Reduced coordinates of ``v ∈ U^⊥`` (the class of v modulo U)."""
    v = tuple(R.parent.field(x) for x in v)
    if not R.core_perp.contains(v):
        raise PreconditionError("vector is not in U^⊥")
    return R._proj @ tuple(v[r] for r in R._rows)


def lift(R: ReducedSpace, c: Sequence) -> Vector:
    if len(c) != R.dim:
        raise DimensionMismatch("reduced coordinate vector has the wrong length")
    return R.section @ tuple(R.parent.field(x) for x in c)


def push_subspace(R: ReducedSpace, S: Subspace) -> Subspace:
    """Image of ``S`` (with ``U ⊆ S ⊆ U^⊥``) in the reduced space."""
    if not (R.core.issubspace(S) and S.issubspace(R.core_perp)):
        raise PreconditionError("push_subspace needs U ⊆ S ⊆ U^⊥")
    return Subspace.span(R.parent.field, R.dim, [project(R, v) for v in S.vectors()])


def pull_subspace(R: ReducedSpace, S: Subspace) -> Subspace:
    """Preimage in ``U^⊥`` of a reduced subspace (always contains U)."""
    if S.ambient_dim != R.dim:
        raise DimensionMismatch("subspace is not in the reduced space")
    return Subspace.span(R.parent.field, R.parent.dim, R.core.vectors() + [lift(R, c) for c in S.vectors()])
