"""Exhaustive orbit census over small prime fields.

Enumerates every Lagrangian of ``V1 ⊕ V2`` over GF(p), the full groups
Sp(V1) and Sp(V2), and computes the exact orbit partition with a union-find.
The partition is then compared with the fibres of ``i = dim(U ∩ V1)``.

Internally vectors are tuples of ints in ``range(p)`` and a subspace is the
tuple of rows of its reduced row-echelon basis; this is the same canonical
form :class:`~lagorbits.exactlin.Subspace` stores (transposed).
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product

from .errors import PreconditionError, TooLarge
from .exactlin import Mat, PrimeField, Subspace
from .symplectic import SymplecticSpace, std_gram

MAX_DIM = 6
MAX_P = 3
MAX_GROUP_ORDER = 60_000
MAX_FULL_ACTIONS = 2_000_000


def sp_order(n: int, p: int) -> int:
    """``|Sp_2n(F_p)| = p^(n²) Π_{k=1..n} (p^(2k) − 1)``."""
    out = p ** (n * n)
    for k in range(1, n + 1):
        out *= p ** (2 * k) - 1
    return out


def lagrangian_count(n: int, p: int) -> int:
    """``Π_{k=1..n} (p^k + 1)``."""
    out = 1
    for k in range(1, n + 1):
        out *= p ** k + 1
    return out


def _guard(dim: int, p: int):
    if dim > MAX_DIM or p > MAX_P:
        raise TooLarge(f"census limited to dim <= {MAX_DIM} and p <= {MAX_P}")


def _int_gram(V: SymplecticSpace) -> list[list[int]]:
    if not isinstance(V.field, PrimeField):
        raise PreconditionError("finite-field enumeration needs a prime field")
    return [[int(x) for x in row] for row in V.gram.data]


# ---------------------------------------------------------------------------
# int kernels


def _rref_key(rows: list[list[int]], p: int) -> tuple:
    rows = [list(r) for r in rows]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pr = 0
    for c in range(nc):
        if pr == nr:
            break
        sel = next((r for r in range(pr, nr) if rows[r][c]), None)
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        inv = pow(rows[pr][c], -1, p)
        prow = [(x * inv) % p for x in rows[pr]]
        rows[pr] = prow
        for r in range(nr):
            if r != pr and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], prow)]
        pr += 1
    return tuple(tuple(r) for r in rows[:pr])


def _form(G, p, x, y) -> int:
    return sum(x[a] * G[a][b] * y[b] for a in range(len(x)) if x[a] for b in range(len(y)) if G[a][b] and y[b]) % p


def _lagrangian_keys(G, p: int) -> list[tuple]:
    N = len(G)
    k = N // 2
    out = []
    for piv in combinations(range(N), k):
        free = [(r, c) for r in range(k) for c in range(piv[r] + 1, N) if c not in piv]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * N for _ in range(k)]
            for r, c in enumerate(piv):
                rows[r][c] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            if all(_form(G, p, rows[a], rows[b]) == 0 for a in range(k) for b in range(a + 1, k)):
                out.append(tuple(tuple(r) for r in rows))
    return out


def _transvection_gens(G, p: int) -> list[tuple]:
    """Transvections along e_i, f_i and e_i + e_j (i < j) in the standard basis."""
    N = len(G)
    n = N // 2
    vs = []
    for a in range(N):
        v = [0] * N
        v[a] = 1
        vs.append(v)
    for a in range(n):
        for b in range(a + 1, n):
            v = [0] * N
            v[a] = v[b] = 1
            vs.append(v)
    gens = []
    for v in vs:
        row = [sum(v[a] * G[a][b] for a in range(N)) % p for b in range(N)]
        gens.append(tuple((int(r == c) + v[r] * row[c]) % p for r in range(N) for c in range(N)))
    return gens


def _mul(A: tuple, B: tuple, N: int, p: int) -> tuple:
    cols = [B[c::N] for c in range(N)]
    rows = [A[r * N:(r + 1) * N] for r in range(N)]
    return tuple(sum(map(int.__mul__, row, col)) % p for row in rows for col in cols)


def _closure(gens: list[tuple], N: int, p: int, limit: int) -> list[tuple]:
    ident = tuple(int(r == c) for r in range(N) for c in range(N))
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = _mul(s, x, N, p)
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
                if len(order) > limit:
                    raise TooLarge("group exceeds the enumeration limit")
    return order


def _sp_elements(V: SymplecticSpace) -> tuple[list[tuple], list[tuple]]:
    G = _int_gram(V)
    p = V.field.p
    _guard(V.dim, p)
    if sp_order(V.half, p) > MAX_GROUP_ORDER:
        raise TooLarge(f"|Sp_{V.dim}(F_{p})| = {sp_order(V.half, p)} exceeds {MAX_GROUP_ORDER}")
    gens = _transvection_gens(G, p)
    elems = _closure(gens, V.dim, p, MAX_GROUP_ORDER)
    return elems, gens


def _flat_to_mat(field, flat: tuple, N: int) -> Mat:
    return Mat.from_rows(field, [flat[r * N:(r + 1) * N] for r in range(N)])


# ---------------------------------------------------------------------------
# public enumeration


def enumerate_lagrangians(V: SymplecticSpace) -> list[Subspace]:
    G = _int_gram(V)
    _guard(V.dim, V.field.p)
    keys = _lagrangian_keys(G, V.field.p)
    return [Subspace.span(V.field, V.dim, k) for k in keys]


def enumerate_sp(V: SymplecticSpace) -> list[Mat]:
    elems, _ = _sp_elements(V)
    return [_flat_to_mat(V.field, e, V.dim) for e in elems]


def group_is_closed(elems: list[tuple], gens: list[tuple], G, p: int, full_check_limit: int = 100) -> bool:
    """Closure under products (all pairs when small, otherwise by generators,
    which suffices for a finite set containing 1) and under inverses."""
    N = len(G)
    S = set(elems)
    if not S or tuple(int(r == c) for r in range(N) for c in range(N)) not in S:
        return False
    others = elems if len(elems) <= full_check_limit else gens
    for x in elems:
        for y in others:
            if _mul(x, y, N, p) not in S:
                return False
    # symplectic inverse: G⁻¹ xᵀ G, and G⁻¹ = −G for the standard form
    Gf = tuple(G[r][c] % p for r in range(N) for c in range(N))
    Gi = tuple((-G[r][c]) % p for r in range(N) for c in range(N))
    for x in elems:
        xt = tuple(x[c * N + r] for r in range(N) for c in range(N))
        inv = _mul(_mul(Gi, xt, N, p), Gf, N, p)
        if _mul(inv, x, N, p) != tuple(int(r == c) for r in range(N) for c in range(N)) or inv not in S:
            return False
    return True


# ---------------------------------------------------------------------------
# census


@dataclass
class CensusReport:
    p: int
    m: int
    n: int
    total_lagrangians: int
    orbits: list = dc_field(default_factory=list)
    agreement: bool = False
    group_orders: tuple = ()
    group_closed: bool = False
    action: str = ""

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    def to_json(self) -> dict:
        return {
            "p": self.p, "m": self.m, "n": self.n,
            "total_lagrangians": self.total_lagrangians,
            "orbit_count": self.orbit_count,
            "orbits": self.orbits,
            "agreement": self.agreement,
            "group_orders": list(self.group_orders),
            "group_closed": self.group_closed,
            "action": self.action,
        }


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            lo, hi = min(ra, rb), max(ra, rb)
            self.parent[hi] = lo


def _rank(rows, p: int) -> int:
    return len(_rref_key([list(r) for r in rows], p)) if rows else 0


def orbit_census(m: int, n: int, p: int, threads: int = 1, action: str = "auto") -> CensusReport:
    """Orbit partition of L(V1 ⊕ V2) under Sp(V1) × Sp(V2) over GF(p)."""
    if m > n:
        m, n = n, m
    if m < 1:
        raise PreconditionError("both factors need positive rank")
    F = PrimeField(p)
    _guard(2 * (m + n), p)
    V1 = SymplecticSpace(F, std_gram(m, F))
    V2 = SymplecticSpace(F, std_gram(n, F))
    V = SymplecticSpace(F, Mat.block_diag(V1.gram, -V2.gram))
    keys = _lagrangian_keys(_int_gram(V), p)
    index = {k: idx for idx, k in enumerate(keys)}

    G1, gens1 = _sp_elements(V1)
    G2, gens2 = _sp_elements(V2)
    closed = (group_is_closed(G1, gens1, _int_gram(V1), p) and group_is_closed(G2, gens2, _int_gram(V2), p)
              and len(G1) == sp_order(m, p) and len(G2) == sp_order(n, p))

    if action == "auto":
        action = "group" if (len(G1) + len(G2)) * len(keys) <= MAX_FULL_ACTIONS else "generators"
    if action == "group":
        acting = [(0, g) for g in G1] + [(1, g) for g in G2]
    elif action == "generators":
        acting = [(0, g) for g in gens1] + [(1, g) for g in gens2]
    else:
        raise PreconditionError(f"unknown action mode {action!r}")

    d1, d2 = 2 * m, 2 * n

    def apply(block: int, g_rows: list, u: tuple) -> list[int]:
        if block == 0:
            head = u[:d1]
            return [sum(map(int.__mul__, row, head)) % p for row in g_rows] + list(u[d1:])
        tail = u[d1:]
        return list(u[:d1]) + [sum(map(int.__mul__, row, tail)) % p for row in g_rows]

    def edges(chunk):
        out = []
        for block, g in chunk:
            d = d1 if block == 0 else d2
            g_rows = [g[r * d:(r + 1) * d] for r in range(d)]
            for idx, k in enumerate(keys):
                image = _rref_key([apply(block, g_rows, u) for u in k], p)
                out.append((idx, index[image]))
        return out

    threads = max(1, int(threads))
    size = -(-len(acting) // threads)
    chunks = [acting[s:s + size] for s in range(0, len(acting), size)]
    uf = _UnionFind(len(keys))
    if threads == 1:
        results = [edges(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(edges, chunks))
    for res in results:
        for a, b in res:
            uf.union(a, b)

    invariant = [m + n - _rank([u[d1:] for u in k], p) for k in keys]
    classes: dict[int, list[int]] = {}
    for idx in range(len(keys)):
        classes.setdefault(uf.find(idx), []).append(idx)
    orbits = []
    pure = True
    for root in sorted(classes):
        members = classes[root]
        vals = {invariant[x] for x in members}
        pure &= len(vals) == 1
        orbits.append({"size": len(members), "invariant_i": min(vals)})
    labels = [o["invariant_i"] for o in orbits]
    agreement = pure and len(set(labels)) == len(labels)
    return CensusReport(p, m, n, len(keys), orbits, agreement, (len(G1), len(G2)), closed, action)
