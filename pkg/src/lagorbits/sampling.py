"""Seeded random group elements and Lagrangians.

All randomness flows through a caller-supplied ``random.Random`` so that
equal seeds give identical output.  Elements stay exact: symplectic
matrices are products of transvections with small rational parameters.
"""

from __future__ import annotations

import random

from gmpy2 import mpq

from .exactlin import QQ, Mat, Subspace, unit
from .symplectic import SymplecticSpace, extend_to_darboux, std_gram, transvection

_COEFFS = (1, -1, 2, -2, mpq(1, 2), mpq(-1, 2), 3, mpq(-1, 3))


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def _small_vector(V: SymplecticSpace, rng: random.Random, density: float = 0.6):
    while True:
        v = tuple(V.field(rng.choice((-1, 1, 2)) if rng.random() < density else 0) for _ in range(V.dim))
        if any(v):
            return v


def random_symplectic(V: SymplecticSpace, rng: random.Random, steps: int = 6) -> Mat:
    g = Mat.identity(V.field, V.dim)
    for _ in range(steps):
        a = rng.choice(_COEFFS) if V.field is QQ else rng.randrange(1, V.field.characteristic)
        g = transvection(V, _small_vector(V, rng), a) @ g
    return g


def random_invertible(n: int, rng: random.Random, field=QQ) -> Mat:
    while True:
        g = Mat.from_rows(field, [[rng.choice((-2, -1, 0, 0, 1, 1, 2, 3)) for _ in range(n)] for _ in range(n)])
        if rng.random() < 0.3 and n:
            r, c = rng.randrange(n), rng.randrange(n)
            rows = [list(x) for x in g.data]
            rows[r][c] = field(rng.choice(_COEFFS))
            g = Mat.from_rows(field, rows)
        if g.is_invertible():
            return g


def _darboux(V: SymplecticSpace):
    """The standard pairs when the Gram matrix is standard, else a Darboux basis."""
    n = V.half
    if V.gram == std_gram(n, V.field):
        return [(unit(V.field, V.dim, a), unit(V.field, V.dim, n + a)) for a in range(n)]
    return extend_to_darboux(V)


def random_lagrangian(V: SymplecticSpace, rng: random.Random, steps: int | None = None) -> Subspace:
    """A coordinate Lagrangian (one of e_a, f_a per Darboux pair) moved by a
    short product of sparse transvections; short walks keep non-generic
    intersection patterns common."""
    start = [e if rng.random() < 0.5 else f for e, f in _darboux(V)]
    if steps is None:
        steps = rng.randrange(0, 4)
    g = Mat.identity(V.field, V.dim)
    for _ in range(steps):
        a = rng.choice(_COEFFS) if V.field is QQ else rng.randrange(1, V.field.characteristic)
        g = transvection(V, _small_vector(V, rng, density=0.35), a) @ g
    return Subspace.span(V.field, V.dim, [g @ v for v in start])
