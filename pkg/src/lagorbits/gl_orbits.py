"""GL(n)-orbits on the Lagrangian Grassmannian of a polarized space W1 ⊕ W2.

``g ∈ GL_n`` acts by ``block-diag(g, (gᵀ)⁻¹)`` in the coordinates
``e_1..e_n, f_1..f_n``.  A Lagrangian U has invariants
``i = dim(U ∩ W1)``, ``j = dim(U ∩ W2)`` and the positive index ``k`` of a
nondegenerate symmetric form on the ``d = n − i − j`` dimensional residue;
``(i, j, k)`` is a complete invariant over the reals.

Witnesses are real: over Q a form of signature (k, d−k) need not be
rationally congruent to ``diag(±1)``, so a witness is a :class:`GlWitness`
whose entries may contain square roots of rationals.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from . import realmat
from .errors import InvalidElement, NotInL00, NotSameOrbit, PreconditionError, RangeError, ShapeError
from .exactlin import QQ, Mat, Subspace, complement_basis, intersect, kernel, solve, subspace_sum, unit
from .realmat import RealMat
from .symplectic import SymplecticSpace, is_lagrangian, perp, push_subspace, reduce, stabilizer_rank, std_space


@dataclass(frozen=True)
class PolarizedSpace:
    n: int
    field: object
    V: SymplecticSpace
    W1: Subspace
    W2: Subspace
    J: Mat

    @classmethod
    def create(cls, n: int, field=QQ) -> "PolarizedSpace":
        if n < 0:
            raise RangeError("n must be nonnegative")
        V = std_space(n, field)
        N = 2 * n
        W1 = Subspace.span(field, N, [unit(field, N, a) for a in range(n)])
        W2 = Subspace.span(field, N, [unit(field, N, n + a) for a in range(n)])
        cols = [tuple(-x for x in unit(field, N, n + a)) for a in range(n)]
        cols += [unit(field, N, a) for a in range(n)]
        J = Mat.from_cols(field, cols, rows=N)
        P = cls(n, field, V, W1, W2, J)
        assert is_lagrangian(V, W1) and is_lagrangian(V, W2)
        assert subspace_sum(W1, W2).dim == N
        # Ω(x, y) = (x, J y) with the standard inner product
        assert J == V.gram
        return P

    def e(self, a: int):
        return unit(self.field, 2 * self.n, a)

    def f(self, a: int):
        return unit(self.field, 2 * self.n, self.n + a)


@dataclass(frozen=True)
class GlClass:
    n: int
    i: int
    j: int
    k: int

    def __post_init__(self):
        if min(self.i, self.j, self.k) < 0 or self.i + self.j > self.n or self.k > self.d:
            raise RangeError("need i + j <= n and 0 <= k <= n - i - j")

    @property
    def d(self) -> int:
        return self.n - self.i - self.j

    @property
    def signature(self) -> tuple[int, int]:
        return self.k, self.d - self.k

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "k": self.k, "d": self.d, "signature": list(self.signature)}


def gl_element(g: Mat) -> Mat:
    """``block-diag(g, (gᵀ)⁻¹)``, the symplectic matrix through which g acts."""
    if not g.is_square():
        raise InvalidElement("group element must be square")
    try:
        ginv = g.inverse()
    except PreconditionError as exc:
        raise InvalidElement("group element is singular") from exc
    return Mat.block_diag(g, ginv.T)


def _require_lagrangian(P: PolarizedSpace, U: Subspace):
    if U.ambient_dim != 2 * P.n or U.field != P.field or not is_lagrangian(P.V, U):
        raise PreconditionError("input is not a Lagrangian subspace")


def gl_action(P: PolarizedSpace, g: Mat, U: Subspace) -> Subspace:
    if g.shape != (P.n, P.n):
        raise InvalidElement(f"group element must be {P.n}x{P.n}")
    _require_lagrangian(P, U)
    return U.map(gl_element(g))


def graph_map(P: PolarizedSpace, U: Subspace) -> Mat:
    """φ_U with ``U = {(x, φ_U x)}``, for U transverse to W1 and W2."""
    _require_lagrangian(P, U)
    if intersect(U, P.W1).dim or intersect(U, P.W2).dim:
        raise NotInL00("U meets W1 or W2 nontrivially")
    n = P.n
    B = U.basis
    top = B.submatrix(range(n), range(B.cols))
    cols = []
    for a in range(n):
        lam = solve(top, unit(P.field, n, a))
        u = B @ lam
        cols.append(u[n:])
    return Mat.from_cols(P.field, cols, rows=n)


def hermitian_form(P: PolarizedSpace, U: Subspace) -> Mat:
    """``B(x, y) = (x, J φ_U(y))`` on W1, which is symmetric for U Lagrangian."""
    phi = graph_map(P, U)
    n = P.n
    z = P.field.zero
    cols = []
    for b in range(n):
        w = (z,) * n + tuple(phi.col(b))
        cols.append((P.J @ w)[:n])
    B = Mat.from_cols(P.field, cols, rows=n)
    assert B == B.T, "form of a Lagrangian graph must be symmetric"
    return B


# ---------------------------------------------------------------------------
# signatures


def congruence_diagonalize(B: Mat) -> tuple[Mat, list]:
    """``(C, d)`` with C invertible and ``Cᵀ B C = diag(d)``, exactly.

    Symmetric Gaussian elimination; when every remaining diagonal entry is
    zero but some off-diagonal ``B[r][c]`` is not, the basis vector ``x_r`` is
    replaced by ``x_r + x_c``, which makes the new ``B[r][r] = 2 B[r][c]``.
    """
    if not B.is_square():
        raise ShapeError("form must be square")
    if B != B.T:
        raise ShapeError("form must be symmetric")
    if B.field.characteristic == 2:
        raise PreconditionError("congruence diagonalization needs characteristic != 2")
    N = B.rows
    F = B.field
    A = [list(r) for r in B.data]
    C = [list(r) for r in Mat.identity(F, N).data]

    def add_multiple(dst, src, f):
        # x_dst += f * x_src, applied as a congruence
        for r in range(N):
            A[dst][r] = A[dst][r] + f * A[src][r]
        for r in range(N):
            A[r][dst] = A[r][dst] + f * A[r][src]
        for r in range(N):
            C[r][dst] = C[r][dst] + f * C[r][src]

    def swap(a, b):
        A[a], A[b] = A[b], A[a]
        for r in range(N):
            A[r][a], A[r][b] = A[r][b], A[r][a]
            C[r][a], C[r][b] = C[r][b], C[r][a]

    for k in range(N):
        piv = next((r for r in range(k, N) if A[r][r]), None)
        if piv is None:
            hit = next(((r, c) for r in range(k, N) for c in range(k, N) if r != c and A[r][c]), None)
            if hit is None:
                break
            add_multiple(hit[0], hit[1], F.one)
            piv = hit[0]
        if piv != k:
            swap(piv, k)
        for r in range(k + 1, N):
            if A[r][k]:
                add_multiple(r, k, -A[r][k] / A[k][k])
    Cm = Mat(F, N, N, tuple(tuple(r) for r in C))
    d = [A[r][r] for r in range(N)]
    assert Cm.T @ B @ Cm == Mat.diag(F, d)
    return Cm, d


def signature(B: Mat) -> tuple[int, int]:
    """``(p, q)``, the numbers of positive and negative squares of B."""
    _, d = congruence_diagonalize(B)
    return sum(1 for x in d if x > 0), sum(1 for x in d if x < 0)


# ---------------------------------------------------------------------------
# classification


def _graph_form(W: SymplecticSpace, A: Subspace, B: Subspace, L: Subspace) -> Mat:
    """For Lagrangians A ⊕ B = W and L transverse to both, the symmetric
    form ``(x, y) ↦ Ω(x, φ(y))`` on A, where L is the graph of φ: A → B."""
    F = W.field
    d = A.dim
    if d == 0:
        return Mat(F, 0, 0, ())
    system = L.basis.hstack(-B.basis)
    images = []
    for a in A.vectors():
        sol = solve(system, a)
        if sol is None:
            raise AssertionError("residual Lagrangian is not a graph over A")
        c = sol[L.dim:]
        images.append(B.basis @ c)
    avs = A.vectors()
    form = Mat.from_rows(F, [[W.omega(avs[p], images[q]) for q in range(d)] for p in range(d)])
    assert form == form.T
    return form


def intersections(P: PolarizedSpace, U: Subspace) -> tuple[Subspace, Subspace]:
    _require_lagrangian(P, U)
    return intersect(U, P.W1), intersect(U, P.W2)


def residual_form(P: PolarizedSpace, U: Subspace) -> Mat:
    """The residual symmetric form, reached by reducing first by U ∩ W2 and
    then by the image of U ∩ W1."""
    U1, U2 = intersections(P, U)
    V = P.V
    R2 = reduce(V, U2)
    L1 = push_subspace(R2, U)
    A1 = push_subspace(R2, subspace_sum(intersect(P.W1, R2.core_perp), U2))
    B1 = push_subspace(R2, P.W2)
    core = push_subspace(R2, subspace_sum(U1, U2))
    W = R2.reduced
    R12 = reduce(W, core)
    L2 = push_subspace(R12, L1)
    A2 = push_subspace(R12, A1)
    B2 = push_subspace(R12, subspace_sum(intersect(B1, R12.core_perp), core))
    return _graph_form(R12.reduced, A2, B2, L2)


def beta_form(P: PolarizedSpace, U: Subspace) -> Mat:
    """``β(u, w) = Ω(P1 u, P2 w)`` on a complement of (U∩W1) ⊕ (U∩W2) in U.

    Order-free and independent of any reduction; its signature must agree
    with that of :func:`residual_form`.
    """
    U1, U2 = intersections(P, U)
    n = P.n
    comp = complement_basis(subspace_sum(U1, U2), U)
    xs = [c[:n] for c in comp]
    ys = [c[n:] for c in comp]
    z = P.field.zero
    beta = Mat.from_rows(P.field, [[sum((a * b for a, b in zip(x, y)), z) for y in ys] for x in xs]) \
        if comp else Mat(P.field, 0, 0, ())
    assert beta == beta.T
    return beta


def classify(P: PolarizedSpace, U: Subspace) -> GlClass:
    U1, U2 = intersections(P, U)
    i, j = U1.dim, U2.dim
    form = residual_form(P, U)
    p, q = signature(form) if form.rows else (0, 0)
    assert p + q == P.n - i - j
    assert (p, q) == (signature(beta_form(P, U)) if P.n - i - j else (0, 0))
    return GlClass(P.n, i, j, p)


def canonical_rep(P: PolarizedSpace, i: int, j: int, k: int) -> Subspace:
    """``span{e_1..e_i} + span{f_{i+1}..f_{i+j}} + span{e_a ± f_a}`` with k plus signs."""
    GlClass(P.n, i, j, k)
    vecs = [P.e(a) for a in range(i)] + [P.f(b) for b in range(i, i + j)]
    for idx, a in enumerate(range(i + j, P.n)):
        s = 1 if idx < k else -1
        vecs.append(tuple(x + s * y for x, y in zip(P.e(a), P.f(a))))
    U = Subspace.span(P.field, 2 * P.n, vecs)
    assert is_lagrangian(P.V, U)
    return U


def _normal_form(P: PolarizedSpace, U: Subspace):
    """Rational data ``(cls, g, Q, d)`` such that U is reached from
    ``canonical_rep(cls)`` by ``g · block-diag(I, Q) · diag(1, …, 1/√|d|)``.

    Columns of g: a basis of U ∩ W1, then vectors dual to a basis of U ∩ W2,
    then a complement; Q diagonalizes the residual graph (positives first).
    """
    U1, U2 = intersections(P, U)
    n, F = P.n, P.field
    i, j = U1.dim, U2.dim
    xs = [u[:n] for u in U1.vectors()]
    ys = [u[n:] for u in U2.vectors()]
    Y = Mat(F, j, n, tuple(ys))
    dual = [solve(Y, unit(F, j, b)) for b in range(j)]
    K = kernel(Y) if j else Subspace.full(F, n)
    rest = complement_basis(Subspace.span(F, n, xs), K)
    g = Mat.from_cols(F, xs + dual + rest, rows=n)
    Uo = gl_action(P, g.inverse(), U)
    R = list(range(i + j, n))
    d = len(R)
    sub = Subspace.span(F, 2 * d, [tuple(v[a] for a in R) + tuple(v[n + a] for a in R) for v in Uo.vectors()])
    if d:
        phi = graph_map(PolarizedSpace.create(d, F), sub)
        C, diag = congruence_diagonalize(phi)
        order = [c for c in range(d) if diag[c] > 0] + [c for c in range(d) if diag[c] < 0]
        Q = C.submatrix(range(d), order)
        dd = [diag[c] for c in order]
    else:
        Q, dd = Mat(F, 0, 0, ()), []
    k = sum(1 for x in dd if x > 0)
    return GlClass(n, i, j, k), g, Q, dd


@dataclass(frozen=True)
class GlWitness:
    """A real element of GL_n together with its inverse transpose."""

    g: RealMat
    g_inv_T: RealMat

    def is_rational(self) -> bool:
        return self.g.is_rational()

    def to_json(self) -> dict:
        return {"g": self.g.to_json(), "rational": self.is_rational()}


def maps_onto(P: PolarizedSpace, w: GlWitness | Mat, U: Subspace, Up: Subspace) -> bool:
    """Exact check that the element w carries U onto U'."""
    if isinstance(w, Mat):
        return gl_action(P, w, U) == Up
    n = P.n
    if (w.g @ w.g_inv_T.T) != Mat.identity(QQ, n):
        return False
    if U.dim != Up.dim:
        return False
    for N in sorted(set(w.g.terms) | set(w.g_inv_T.terms)):
        block = Mat.block_diag(w.g.component(N), w.g_inv_T.component(N))
        if not all(Up.contains(block @ u) for u in U.vectors()):
            return False
    return True


def witness(P: PolarizedSpace, U: Subspace, Up: Subspace) -> GlWitness:
    c, g, Q, d = _normal_form(P, U)
    cp, gp, Qp, dp = _normal_form(P, Up)
    if c != cp:
        raise NotSameOrbit(f"invariants differ: {c.to_json()} versus {cp.to_json()}")
    F = P.field
    I = Mat.identity(F, c.i + c.j)
    A = gp @ Mat.block_diag(I, Qp)
    B = Mat.block_diag(I, Q.inverse() if c.d else Q) @ g.inverse()
    rho = [mpq(1)] * (c.i + c.j) + [abs(x) / abs(y) for x, y in zip(d, dp)]
    W = realmat.RealMat.from_rational(A) @ RealMat.sqrt_diag(rho) @ B
    WinvT = RealMat.from_rational(A.inverse().T) @ RealMat.sqrt_diag([1 / r for r in rho]) @ B.inverse().T
    out = GlWitness(W, WinvT)
    if not maps_onto(P, out, U, Up):
        raise AssertionError("witness failed verification")
    return out


# ---------------------------------------------------------------------------
# stabilizers and counts


def gl_lie_basis(P: PolarizedSpace) -> list[Mat]:
    """``block-diag(E_ab, −E_abᵀ)``, the image of gl_n in sp(V)."""
    F, n = P.field, P.n
    out = []
    for a in range(n):
        for b in range(n):
            E = Mat.from_rows(F, [[1 if (r, c) == (a, b) else 0 for c in range(n)] for r in range(n)]) if n else None
            out.append(Mat.block_diag(E, -E.T))
    return out


def stab_dim(P: PolarizedSpace, U: Subspace) -> int:
    _require_lagrangian(P, U)
    basis = gl_lie_basis(P)
    return len(basis) - stabilizer_rank(P.V, basis, U)


def expected_stab_dim(n: int, i: int, j: int, k: int) -> int:
    """dim GL_i + dim GL_j + dim O(k, d−k) + dim N for the block-upper
    triangular parabolic of type (i, j, d)."""
    GlClass(n, i, j, k)
    d = n - i - j
    return i * i + j * j + d * (d - 1) // 2 + i * j + (i + j) * d


def expected_orbit_dim(n: int, i: int, j: int, k: int) -> int:
    return n * n - expected_stab_dim(n, i, j, k)


def all_classes(n: int) -> list[GlClass]:
    return [GlClass(n, i, j, k) for i in range(n + 1) for j in range(n + 1 - i) for k in range(n - i - j + 1)]


def orbit_census_formula(n: int) -> int:
    if n < 0:
        raise RangeError("n must be nonnegative")
    return sum(n - i - j + 1 for i in range(n + 1) for j in range(n + 1 - i))
