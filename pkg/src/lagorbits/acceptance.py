"""The acceptance suite: ten exact checks, each reported as one pass/fail line.

Every check is deterministic given the seed.  ``run_all`` is shared by the
test suite and the ``selftest`` command.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from . import ff_oracle
from . import gl_orbits as gl
from . import spsp_orbits as sp
from .sampling import make_rng, random_invertible, random_lagrangian, random_symplectic
from .symplectic import is_symplectic_map

SPSP_GRID = [(m, n) for m in range(1, 5) for n in range(m, 5)]
SMALL_SPSP = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)]


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: float | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:.0f}s)" if self.limit else ""
        return f"criterion {self.number:2d} {status}  {self.name}: {self.detail} [{self.seconds:.2f}s{budget}]"


def _sub_seed(seed: int, tag: int) -> int:
    return (seed * 1_000_003 + tag) % (1 << 64)


# ---------------------------------------------------------------------------
# 1 and 2: Sp x Sp dimensions


def _spsp_grid():
    rows = []
    for m, n in SPSP_GRID:
        S = sp.SumSpace.create(m, n)
        for i in range(m + 1):
            rows.append((m, n, i, sp.stab_dim(S, sp.canonical_rep(S, i))))
    return rows


def criterion_1(seed: int = 0) -> tuple[bool, str]:
    bad = []
    rows = _spsp_grid()
    for m, n, i, s in rows:
        orbit = m * (2 * m + 1) + n * (2 * n + 1) - s
        if orbit != (n + m + 1) * (n + m) // 2 - i * i - n * i + m * i:
            bad.append((m, n, i, orbit))
    return not bad, f"{len(rows)} (m,n,i) cases, mismatches {bad}"


def criterion_2(seed: int = 0) -> tuple[bool, str]:
    bad = []
    rows = _spsp_grid()
    for m, n, i, s in rows:
        if s != sp.expected_stab_dim(m, n, i) or sp.expected_orbit_dim(m, n, i) != sp.closed_form_orbit_dim(m, n, i):
            bad.append((m, n, i, s))
    return not bad, f"{len(rows)} (m,n,i) cases, mismatches {bad}"


# ---------------------------------------------------------------------------
# 3: GL stabilizers


def criterion_3(seed: int = 0) -> tuple[bool, str]:
    bad, count = [], 0
    for n in range(0, 6):
        P = gl.PolarizedSpace.create(n)
        for c in gl.all_classes(n):
            count += 1
            U = gl.canonical_rep(P, c.i, c.j, c.k)
            if gl.stab_dim(P, U) != gl.expected_stab_dim(n, c.i, c.j, c.k):
                bad.append((n, c.i, c.j, c.k))
    return not bad, f"{count} classes for n <= 5, mismatches {bad}"


# ---------------------------------------------------------------------------
# 4: finite-field census


CENSUS_CASES = {(1, 1, 2): 15, (1, 1, 3): 40, (1, 2, 2): 135}


def criterion_4(seed: int = 0) -> tuple[bool, str]:
    parts, ok = [], True
    for (m, n, p), total in CENSUS_CASES.items():
        r = ff_oracle.orbit_census(m, n, p, threads=1)
        good = (r.total_lagrangians == total and r.orbit_count == m + 1 and r.agreement and r.group_closed
                and sum(o["size"] for o in r.orbits) == total)
        ok &= good
        parts.append(f"({m},{n},{p}): {r.total_lagrangians} Lagrangians, {r.orbit_count} orbits, "
                     f"pure={r.agreement}")
    return ok, "; ".join(parts)


# ---------------------------------------------------------------------------
# 5: GL orbit counts


GL_COUNTS = {1: 4, 2: 10, 3: 20}


def _random_gl_point(P: gl.PolarizedSpace, rng) -> object:
    """Either a short transvection walk from a coordinate Lagrangian or a GL
    push of it, so that every stratum is reached with some frequency."""
    U = random_lagrangian(P.V, rng)
    if rng.random() < 0.5:
        U = gl.gl_action(P, random_invertible(P.n, rng), U)
    return U


def criterion_5(seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(_sub_seed(seed, 5))
    ok, parts = True, []
    for n, expected in GL_COUNTS.items():
        P = gl.PolarizedSpace.create(n)
        reps = {c: gl.canonical_rep(P, c.i, c.j, c.k) for c in gl.all_classes(n)}
        seen = {gl.classify(P, U) for U in reps.values()}
        distinct = len(seen) == len(reps) == expected == gl.orbit_census_formula(n) and seen == set(reps)
        hit, stray = set(), 0
        for _ in range(1000):
            c = gl.classify(P, _random_gl_point(P, rng))
            if c in reps:
                hit.add(c)
            else:
                stray += 1
        ok &= distinct and stray == 0
        parts.append(f"n={n}: {len(seen)} distinct reps (want {expected}), 1000 samples hit {len(hit)} classes, "
                     f"{stray} outside")
    return ok, "; ".join(parts)


# ---------------------------------------------------------------------------
# 6: invariance


def criterion_6(seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(_sub_seed(seed, 6))
    sp_bad = 0
    spaces = [sp.SumSpace.create(m, n) for m, n in SMALL_SPSP]
    for idx in range(500):
        S = spaces[idx % len(spaces)]
        U = sp.canonical_rep(S, rng.randrange(S.m + 1))
        U = S.act(random_symplectic(S.V1, rng), random_symplectic(S.V2, rng), U)
        h1, h2 = random_symplectic(S.V1, rng), random_symplectic(S.V2, rng)
        if sp.classify(S, S.act(h1, h2, U)) != sp.classify(S, U):
            sp_bad += 1
    gl_bad, law_bad, law_count = 0, 0, 0
    for n in range(1, 5):
        P = gl.PolarizedSpace.create(n)
        for _ in range(500):
            U = _random_gl_point(P, rng)
            g = random_invertible(n, rng)
            if gl.classify(P, gl.gl_action(P, g, U)) != gl.classify(P, U):
                gl_bad += 1
        for _ in range(100):
            U = gl.gl_action(P, random_invertible(n, rng), gl.canonical_rep(P, 0, 0, rng.randrange(n + 1)))
            g = random_invertible(n, rng)
            gi = g.inverse()
            law_count += 1
            if gl.graph_map(P, gl.gl_action(P, g, U)) != gi.T @ gl.graph_map(P, U) @ gi:
                law_bad += 1
    ok = sp_bad == gl_bad == law_bad == 0
    return ok, (f"Sp x Sp: 500 elements, {sp_bad} changed; GL: 2000 elements (n=1..4), {gl_bad} changed; "
                f"graph law on {law_count} L00 samples, {law_bad} failures")


# ---------------------------------------------------------------------------
# 7: witnesses


def criterion_7(seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(_sub_seed(seed, 7))
    sp_bad = sp_count = sp_strata = 0
    for m, n in SMALL_SPSP:
        S = sp.SumSpace.create(m, n)
        for i in range(m + 1):
            sp_strata += 1
            base = sp.canonical_rep(S, i)
            for _ in range(100):
                U = S.act(random_symplectic(S.V1, rng), random_symplectic(S.V2, rng), base)
                Up = S.act(random_symplectic(S.V1, rng), random_symplectic(S.V2, rng), base)
                g1, g2 = sp.witness(S, U, Up)
                sp_count += 1
                if not (is_symplectic_map(S.V1, g1) and is_symplectic_map(S.V2, g2) and S.act(g1, g2, U) == Up):
                    sp_bad += 1
    gl_bad = gl_count = irrational = gl_strata = 0
    for n in range(1, 4):
        P = gl.PolarizedSpace.create(n)
        for c in gl.all_classes(n):
            gl_strata += 1
            base = gl.canonical_rep(P, c.i, c.j, c.k)
            for _ in range(100):
                U = gl.gl_action(P, random_invertible(n, rng), base)
                Up = gl.gl_action(P, random_invertible(n, rng), base)
                w = gl.witness(P, U, Up)
                gl_count += 1
                irrational += not w.is_rational()
                if not gl.maps_onto(P, w, U, Up):
                    gl_bad += 1
    ok = sp_bad == gl_bad == 0
    return ok, (f"Sp x Sp: {sp_count} pairs over {sp_strata} strata, {sp_bad} failures; "
                f"GL: {gl_count} pairs over {gl_strata} strata, {gl_bad} failures ({irrational} witnesses need square roots)")


# ---------------------------------------------------------------------------
# 8: graph round trip


def criterion_8(seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(_sub_seed(seed, 8))
    bad = count = 0
    for m, n in SMALL_SPSP:
        S = sp.SumSpace.create(m, n)
        for i in range(m + 1):
            base = sp.canonical_rep(S, i)
            for _ in range(100):
                U = S.act(random_symplectic(S.V1, rng), random_symplectic(S.V2, rng), base)
                count += 1
                if sp.from_graph(S, sp.graph_data(S, U)) != U:
                    bad += 1
    return bad == 0, f"{count} Lagrangians over (m,n) <= (2,3), {bad} round-trip failures"


# ---------------------------------------------------------------------------
# 9: closure curves


def criterion_9(seed: int = 0) -> tuple[bool, str]:
    bad, count = [], 0
    for m in range(1, 4):
        for n in range(m, 4):
            S = sp.SumSpace.create(m, n)
            for i in range(m):
                curve = sp.closure_curve(S, i)
                count += 1
                ts = [t for t, _ in curve.points]
                if ts != list(sp.DEFAULT_TS):
                    bad.append((m, n, i, "parameters"))
                if any(sp.classify(S, U).i != i for _, U in curve.points):
                    bad.append((m, n, i, "curve"))
                if sp.classify(S, curve.limit).i != i + 1:
                    bad.append((m, n, i, "limit"))
    return not bad, f"{count} curves (11 parameters each), failures {bad}"


# ---------------------------------------------------------------------------
# 10: signature cross-oracle


def criterion_10(seed: int = 0) -> tuple[bool, str]:
    rng = make_rng(_sub_seed(seed, 10))
    strata = [(n, i, j) for n in range(1, 5) for i in range(n + 1) for j in range(n + 1 - i)]
    spaces = {n: gl.PolarizedSpace.create(n) for n in range(1, 5)}
    bad, covered = 0, set()
    for idx in range(200):
        n, i, j = strata[idx % len(strata)]
        P = spaces[n]
        k = rng.randrange(n - i - j + 1)
        U = gl.gl_action(P, random_invertible(n, rng), gl.canonical_rep(P, i, j, k))
        U1, U2 = gl.intersections(P, U)
        covered.add((n, U1.dim, U2.dim))
        d = n - U1.dim - U2.dim
        two_step = gl.signature(gl.residual_form(P, U)) if d else (0, 0)
        beta = gl.signature(gl.beta_form(P, U)) if d else (0, 0)
        if two_step != beta or two_step != (k, d - k):
            bad += 1
    ok = bad == 0 and covered == set(strata)
    return ok, f"200 Lagrangians covering {len(covered)}/{len(strata)} (n,i,j) strata, {bad} disagreements"


# ---------------------------------------------------------------------------


CRITERIA: dict[int, tuple[str, Callable, float | None]] = {
    1: ("Sp x Sp orbit dimension closed form", criterion_1, 60.0),
    2: ("Sp x Sp stabilizer factor sum", criterion_2, None),
    3: ("GL stabilizer dimensions", criterion_3, 60.0),
    4: ("finite-field census", criterion_4, 300.0),
    5: ("GL orbit counts", criterion_5, None),
    6: ("invariance and graph transform law", criterion_6, None),
    7: ("constructive transitivity", criterion_7, None),
    8: ("graph round trip", criterion_8, None),
    9: ("closure curves", criterion_9, None),
    10: ("signature cross-oracle", criterion_10, None),
}


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    name, fn, limit = CRITERIA[number]
    start = time.perf_counter()
    try:
        passed, detail = fn(seed)
    except Exception as exc:  # a crash is a failure with its message
        passed, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed > limit:
        passed = False
        detail += f"; exceeded time limit {limit:.0f}s"
    return CriterionResult(number, name, passed, detail, elapsed, limit)


def run_all(seed: int = 0, numbers=None) -> list[CriterionResult]:
    return [run_criterion(k, seed) for k in (numbers or sorted(CRITERIA))]
