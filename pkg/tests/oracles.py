"""Independent brute-force oracles used only by the tests.

These deliberately avoid the library's shortcuts: the stabilizer oracle
solves the full literal linear system in all matrix entries instead of using
a Lie-algebra basis and the Lagrangian pairing trick.
"""

from __future__ import annotations

from lagorbits.exactlin import QQ, Mat, kernel


def _annihilator_rows(U, N):
    """Rows of a matrix A with ker A = U."""
    if U.dim == 0:
        return [tuple(QQ(int(r == c)) for c in range(N)) for r in range(N)]
    return kernel(U.basis.T).vectors()


def _nullity(eqs, unknowns):
    if not eqs:
        return unknowns
    return unknowns - Mat.from_rows(QQ, eqs).rank()


def spsp_stabilizer_nullity(m, n, G1, G2, U):
    """dim of {(X1, X2) : X_aᵀG_a + G_aX_a = 0, (X1 ⊕ X2) U ⊆ U} by one
    linear system in the (2m)² + (2n)² matrix entries."""
    d1, d2 = 2 * m, 2 * n
    N = d1 + d2
    unknowns = d1 * d1 + d2 * d2

    def idx(block, r, c):
        return r * d1 + c if block == 0 else d1 * d1 + r * d2 + c

    eqs = []
    for block, d, G in ((0, d1, G1), (1, d2, G2)):
        for r in range(d):
            for c in range(d):
                # (XᵀG + GX)[r][c] = Σ_t X[t][r] G[t][c] + G[r][t] X[t][c]
                row = [QQ(0)] * unknowns
                for t in range(d):
                    row[idx(block, t, r)] += G[t, c]
                    row[idx(block, t, c)] += G[r, t]
                eqs.append(row)
    A = _annihilator_rows(U, N)
    for u in U.vectors():
        for a in A:
            # a · (X1 ⊕ X2) u = 0
            row = [QQ(0)] * unknowns
            for r in range(N):
                if not a[r]:
                    continue
                if r < d1:
                    for c in range(d1):
                        row[idx(0, r, c)] += a[r] * u[c]
                else:
                    for c in range(d2):
                        row[idx(1, r - d1, c)] += a[r] * u[d1 + c]
            eqs.append(row)
    return _nullity(eqs, unknowns)


def gl_stabilizer_nullity(n, U):
    """dim of {X ∈ gl_n : block-diag(X, −Xᵀ) U ⊆ U} from the literal system."""
    N = 2 * n
    A = _annihilator_rows(U, N)
    eqs = []
    for u in U.vectors():
        for a in A:
            row = [QQ(0)] * (n * n)
            for r in range(n):
                for c in range(n):
                    # top block: (X u_top)[r] gets X[r][c] u[c]
                    row[r * n + c] += a[r] * u[c]
                    # bottom block: (−Xᵀ u_bot)[c] gets −X[r][c] u[n + r]
                    row[r * n + c] -= a[n + c] * u[n + r]
            eqs.append(row)
    return _nullity(eqs, n * n)
