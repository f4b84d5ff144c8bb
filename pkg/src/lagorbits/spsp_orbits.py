"""Orbits of Sp(V1) × Sp(V2) on the Lagrangian Grassmannian of V1 ⊕ V2.

``V = V1 ⊕ V2`` carries ``Ω = Ω1 − Ω2``.  Coordinates of V list the
standard basis of V1 (``e_1..e_m, f_1..f_m``) followed by that of V2
(``e'_1..e'_n, f'_1..f'_n``), and ``m ≤ n`` is enforced.

The complete invariant of a Lagrangian U is ``i = dim(U ∩ V1)``; then
``dim(U ∩ V2) = i + n − m``.  With ``U1 = U ∩ V1`` and ``U2 = U ∩ V2`` fixed,
U is the graph of a symplectic isomorphism ``φ: U1^⊥/U1 → U2^⊥/U2``, and
that graph description drives the witness construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .errors import InvalidGraph, NoDeeperStratum, NotSameOrbit, PreconditionError, RangeError
from .exactlin import QQ, Mat, Subspace, Vector, intersect, solve, unit
from .symplectic import (
    SymplecticSpace,
    darboux_matrix,
    extend_to_darboux,
    is_isotropic,
    is_lagrangian,
    is_symplectic_map,
    lift,
    perp,
    project,
    reduce,
    sp_lie_algebra_basis,
    stabilizer_rank,
    std_space,
)


@dataclass(frozen=True)
class SumSpace:
    m: int
    n: int
    field: object
    V1: SymplecticSpace
    V2: SymplecticSpace
    V: SymplecticSpace
    swapped: bool = False

    @classmethod
    def create(cls, m: int, n: int, field=QQ) -> "SumSpace":
        if m < 1 or n < 1:
            raise RangeError("both factors need positive rank")
        swapped = m > n
        if swapped:
            m, n = n, m
        V1, V2 = std_space(m, field), std_space(n, field)
        V = SymplecticSpace(field, Mat.block_diag(V1.gram, -V2.gram))
        return cls(m, n, field, V1, V2, V, swapped)

    @property
    def dim(self) -> int:
        return 2 * (self.m + self.n)

    def p1(self, v: Sequence) -> Vector:
        return tuple(v[: 2 * self.m])

    def p2(self, v: Sequence) -> Vector:
        return tuple(v[2 * self.m:])

    def embed1(self, x: Sequence) -> Vector:
        return tuple(x) + (self.field.zero,) * (2 * self.n)

    def embed2(self, y: Sequence) -> Vector:
        return (self.field.zero,) * (2 * self.m) + tuple(y)

    def factor1(self) -> Subspace:
        return Subspace.span(self.field, self.dim, [unit(self.field, self.dim, k) for k in range(2 * self.m)])

    def factor2(self) -> Subspace:
        return Subspace.span(self.field, self.dim,
                             [unit(self.field, self.dim, k) for k in range(2 * self.m, self.dim)])

    def act(self, g1: Mat, g2: Mat, U: Subspace) -> Subspace:
        return U.map(Mat.block_diag(g1, g2))

    # user coordinates list the factors in the order they were given
    def internal(self, U: Subspace) -> Subspace:
        if not self.swapped:
            return U
        k = 2 * self.n
        return Subspace.span(self.field, self.dim, [v[k:] + v[:k] for v in U.vectors()])

    def external(self, U: Subspace) -> Subspace:
        if not self.swapped:
            return U
        k = 2 * self.m
        return Subspace.span(self.field, self.dim, [v[k:] + v[:k] for v in U.vectors()])


@dataclass(frozen=True)
class SpSpClass:
    m: int
    n: int
    i: int

    def __post_init__(self):
        if not 0 <= self.i <= self.m:
            raise RangeError("invariant out of range")

    @property
    def dim_u1(self) -> int:
        return self.i

    @property
    def dim_u2(self) -> int:
        return self.i + self.n - self.m

    @property
    def orbit_dim(self) -> int:
        return closed_form_orbit_dim(self.m, self.n, self.i)

    def to_json(self) -> dict:
        return {"i": self.i, "dim_u1": self.dim_u1, "dim_u2": self.dim_u2}


@dataclass(frozen=True)
class GraphData:
    U1: Subspace
    U2: Subspace
    phi: Mat


def _require_lagrangian(S: SumSpace, U: Subspace):
    if U.ambient_dim != S.dim or U.field != S.field or not is_lagrangian(S.V, U):
        raise PreconditionError("input is not a Lagrangian subspace of V1 ⊕ V2")


def intersect_factors(S: SumSpace, U: Subspace) -> tuple[Subspace, Subspace]:
    """``(U ∩ V1, U ∩ V2)`` in factor coordinates."""
    _require_lagrangian(S, U)
    F = S.field
    U1 = Subspace.span(F, 2 * S.m, [S.p1(v) for v in intersect(U, S.factor1()).vectors()])
    U2 = Subspace.span(F, 2 * S.n, [S.p2(v) for v in intersect(U, S.factor2()).vectors()])
    P1U = Subspace.span(F, 2 * S.m, [S.p1(v) for v in U.vectors()])
    P2U = Subspace.span(F, 2 * S.n, [S.p2(v) for v in U.vectors()])
    assert perp(S.V1, P1U) == U1 and perp(S.V2, P2U) == U2
    assert U2.dim == U1.dim + S.n - S.m
    return U1, U2


def classify(S: SumSpace, U: Subspace) -> SpSpClass:
    U1, U2 = intersect_factors(S, U)
    return SpSpClass(S.m, S.n, U1.dim)


def _preimage(S: SumSpace, U: Subspace, x: Sequence) -> Vector:
    """Some ``u ∈ U`` with ``P1(u) = x``."""
    Ub = U.basis
    A = Ub.submatrix(range(2 * S.m), range(Ub.cols))
    lam = solve(A, x)
    if lam is None:
        raise PreconditionError("vector is not in P1(U)")
    return Ub @ lam


def graph_data(S: SumSpace, U: Subspace) -> GraphData:
    """Recover ``(U1, U2, φ)`` with φ written in the deterministic sections."""
    U1, U2 = intersect_factors(S, U)
    R1, R2 = reduce(S.V1, U1), reduce(S.V2, U2)
    cols = []
    for c in range(R1.dim):
        x = lift(R1, unit(S.field, R1.dim, c))
        u = _preimage(S, U, x)
        cols.append(project(R2, S.p2(u)))
    phi = Mat.from_cols(S.field, cols, rows=R2.dim)
    assert is_graph_symplectic(R1.reduced, R2.reduced, phi)
    return GraphData(U1, U2, phi)


def is_graph_symplectic(W1: SymplecticSpace, W2: SymplecticSpace, phi: Mat) -> bool:
    if phi.shape != (W2.dim, W1.dim) or W1.dim != W2.dim:
        return False
    return phi.T @ W2.gram @ phi == W1.gram


def from_graph(S: SumSpace, G: GraphData) -> Subspace:
    """``{(u1, u2) ∈ U1^⊥ ⊕ U2^⊥ : φ(u1 + U1) = u2 + U2}``."""
    F = S.field
    if G.U1.ambient_dim != 2 * S.m or G.U2.ambient_dim != 2 * S.n:
        raise InvalidGraph("U1, U2 must live in V1, V2")
    if not (is_isotropic(S.V1, G.U1) and is_isotropic(S.V2, G.U2)):
        raise InvalidGraph("U1 and U2 must be isotropic")
    if G.U2.dim != G.U1.dim + S.n - S.m:
        raise InvalidGraph("dim U2 must equal dim U1 + n - m")
    R1, R2 = reduce(S.V1, G.U1), reduce(S.V2, G.U2)
    if not is_graph_symplectic(R1.reduced, R2.reduced, G.phi):
        raise InvalidGraph("phi is not a symplectic isomorphism of the reduced spaces")
    vecs = [S.embed1(u) for u in G.U1.vectors()] + [S.embed2(u) for u in G.U2.vectors()]
    for c in range(R1.dim):
        x = unit(F, R1.dim, c)
        a = lift(R1, x)
        b = lift(R2, G.phi @ x)
        vecs.append(tuple(p + q for p, q in zip(S.embed1(a), S.embed2(b))))
    U = Subspace.span(F, S.dim, vecs)
    assert is_lagrangian(S.V, U)
    return U


# ---------------------------------------------------------------------------
# representatives and witnesses


def _rep_vectors(S: SumSpace, i: int, t=None) -> list[Vector]:
    """Spanning vectors of the model point of L_i.

    V1 pairs ``a < i`` contribute ``e_a`` to U1; V2 pairs ``b < i`` and
    ``b ≥ m`` contribute ``e'_b`` to U2; each pair ``i ≤ a < m`` is glued by
    the identity ``e_a ↦ e'_a, f_a ↦ f'_a``.  With ``t`` given, the pair
    ``a = i`` is glued by ``e ↦ t e', f ↦ f'/t`` instead, written with the
    rescaled spanning vector ``t f_a + f'_a`` so that ``t = 0`` is allowed.
    """
    F, m, n = S.field, S.m, S.n
    E1 = lambda k: S.embed1(unit(F, 2 * m, k))
    E2 = lambda k: S.embed2(unit(F, 2 * n, k))
    vecs = [E1(a) for a in range(i)]
    vecs += [E2(b) for b in range(n) if b < i or b >= m]
    for a in range(i, m):
        if t is not None and a == i:
            t = F(t)
            vecs.append(tuple(x + t * y for x, y in zip(E1(a), E2(a))))
            vecs.append(tuple(t * x + y for x, y in zip(E1(m + a), E2(n + a))))
        else:
            vecs.append(tuple(x + y for x, y in zip(E1(a), E2(a))))
            vecs.append(tuple(x + y for x, y in zip(E1(m + a), E2(n + a))))
    return vecs


def canonical_rep(S: SumSpace, i: int) -> Subspace:
    if not 0 <= i <= S.m:
        raise RangeError(f"i must lie in 0..{S.m}")
    return Subspace.span(S.field, S.dim, _rep_vectors(S, i))


def normalizer(S: SumSpace, U: Subspace) -> tuple[Mat, Mat]:
    """``(g1, g2)`` in Sp(V1) × Sp(V2) carrying ``canonical_rep(i)`` onto U."""
    U1, U2 = intersect_factors(S, U)
    i, m, n = U1.dim, S.m, S.n
    pairs1 = extend_to_darboux(S.V1, isotropic=U1.vectors())
    glued = []
    for e, f in pairs1[i:]:
        y = S.p2(_preimage(S, U, e))
        z = S.p2(_preimage(S, U, f))
        glued.append((y, z))
    pairs2 = extend_to_darboux(S.V2, pairs=glued, isotropic=U2.vectors())
    iso2 = pairs2[len(glued):]
    ordered2 = iso2[:i] + glued + iso2[i:]
    assert len(ordered2) == n
    g1 = darboux_matrix(pairs1, S.field)
    g2 = darboux_matrix(ordered2, S.field)
    assert is_symplectic_map(S.V1, g1) and is_symplectic_map(S.V2, g2)
    return g1, g2


def witness(S: SumSpace, U: Subspace, Up: Subspace) -> tuple[Mat, Mat]:
    """Symplectic pair ``(g1, g2)`` with ``(g1 ⊕ g2) U = U'``, verified by action."""
    c, cp = classify(S, U), classify(S, Up)
    if c != cp:
        raise NotSameOrbit(f"invariants differ: i={c.i} versus i={cp.i}")
    a1, a2 = normalizer(S, U)
    b1, b2 = normalizer(S, Up)
    g1, g2 = b1 @ a1.inverse(), b2 @ a2.inverse()
    if not (is_symplectic_map(S.V1, g1) and is_symplectic_map(S.V2, g2) and S.act(g1, g2, U) == Up):
        raise AssertionError("witness failed verification")
    return g1, g2


# ---------------------------------------------------------------------------
# dimensions


def stab_dim(S: SumSpace, U: Subspace) -> int:
    """Dimension of the stabilizer of U in sp(V1) ⊕ sp(V2).

    ``X`` stabilizes a Lagrangian U iff ``Ω(u, X w) = 0`` for all basis vectors
    u, w of U; that expression is symmetric in (u, w) for X in sp(V).
    """
    _require_lagrangian(S, U)
    basis = [Mat.block_diag(X, Mat.zeros(S.field, 2 * S.n, 2 * S.n)) for X in sp_lie_algebra_basis(S.V1)]
    basis += [Mat.block_diag(Mat.zeros(S.field, 2 * S.m, 2 * S.m), X) for X in sp_lie_algebra_basis(S.V2)]
    return len(basis) - stabilizer_rank(S.V, basis, U)


def _check_range(m: int, n: int, i: int):
    if not (1 <= m <= n and 0 <= i <= m):
        raise RangeError("need 0 <= i <= m <= n with m >= 1")


def expected_stab_dim(m: int, n: int, i: int) -> int:
    """Sum of the parabolic factor dimensions: GL_i, GL_{n-m+i}, one shared
    Sp_{2m-2i}, and the two unipotent radicals."""
    _check_range(m, n, i)
    r = m - i
    k = n - m + i
    return (i * i + k * k + r * (2 * r + 1)
            + i * (2 * r) + i * (i + 1) // 2
            + k * (2 * r) + k * (k + 1) // 2)


def expected_orbit_dim(m: int, n: int, i: int) -> int:
    return m * (2 * m + 1) + n * (2 * n + 1) - expected_stab_dim(m, n, i)


def closed_form_orbit_dim(m: int, n: int, i: int) -> int:
    """Closed form ``(n+m+1)(n+m)/2 − i² − ni + mi``."""
    _check_range(m, n, i)
    return (n + m + 1) * (n + m) // 2 - i * i - n * i + m * i


# ---------------------------------------------------------------------------
# closure


@dataclass(frozen=True)
class ClosureCurve:
    i: int
    points: tuple  # of (t, Subspace)
    limit: Subspace


DEFAULT_TS = tuple(mpq(1, 2 ** k) for k in range(11))


def closure_curve(S: SumSpace, i: int, ts: Sequence | None = None) -> ClosureCurve:
    """A rational curve inside L_i whose value at ``t = 0`` lies in L_{i+1}."""
    if not 0 <= i <= S.m:
        raise RangeError(f"i must lie in 0..{S.m}")
    if i == S.m:
        raise NoDeeperStratum("L_m is the closed stratum")
    ts = DEFAULT_TS if ts is None else tuple(S.field(t) for t in ts)
    if any(not t for t in ts):
        raise RangeError("sample parameters must be nonzero")
    pts = tuple((t, Subspace.span(S.field, S.dim, _rep_vectors(S, i, t))) for t in ts)
    limit = Subspace.span(S.field, S.dim, _rep_vectors(S, i, S.field.zero))
    return ClosureCurve(i, pts, limit)
