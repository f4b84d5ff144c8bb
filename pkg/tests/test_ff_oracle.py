from __future__ import annotations

from itertools import product

import pytest

from lagorbits import ff_oracle as ff
from lagorbits.errors import TooLarge
from lagorbits.exactlin import GF, Mat, Subspace
from lagorbits.symplectic import is_lagrangian, is_symplectic_map, std_space


def brute_lagrangians(n, p):
    """All Lagrangians of std_space(n) over GF(p) by spanning every n-tuple of vectors."""
    F = GF(p)
    V = std_space(n, F)
    vecs = list(product(range(p), repeat=2 * n))
    found = set()
    for combo in product(vecs, repeat=n):
        U = Subspace.span(F, 2 * n, combo)
        if U.dim == n and is_lagrangian(V, U):
            found.add(U)
    return found


def brute_sp(n, p):
    """All matrices g over GF(p) with gᵀ G g = G, by exhaustive search on ints."""
    N = 2 * n
    G = [[(1 if c == r + n else -1 if r == c + n else 0) % p for c in range(N)] for r in range(N)]
    out = set()
    for flat in product(range(p), repeat=N * N):
        g = [flat[r * N:(r + 1) * N] for r in range(N)]
        ok = True
        for a in range(N):
            for b in range(N):
                s = sum(g[r][a] * G[r][c] * g[c][b] for r in range(N) for c in range(N)) % p
                if s != G[a][b]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(flat)
    return out


# --- enumeration ------------------------------------------------------------


@pytest.mark.parametrize("n,p,count", [(1, 3, 4), (2, 3, 40), (3, 2, 135), (1, 2, 3), (2, 2, 15)])
def test_lagrangian_counts(n, p, count):
    V = std_space(n, GF(p))
    Ls = ff.enumerate_lagrangians(V)
    assert len(Ls) == count == ff.lagrangian_count(n, p)
    assert len(set(Ls)) == len(Ls)
    assert all(is_lagrangian(V, U) for U in Ls)


@pytest.mark.parametrize("n,p", [(1, 3), (2, 2)])
def test_lagrangians_match_brute_force(n, p):
    assert set(ff.enumerate_lagrangians(std_space(n, GF(p)))) == brute_lagrangians(n, p)


@pytest.mark.parametrize("n,p,order", [(1, 3, 24), (1, 2, 6), (2, 2, 720)])
def test_group_orders(n, p, order):
    V = std_space(n, GF(p))
    elems = ff.enumerate_sp(V)
    assert len(elems) == order == ff.sp_order(n, p)
    assert all(is_symplectic_map(V, g) for g in elems[:50])


@pytest.mark.parametrize("n,p", [(1, 2), (1, 3), (2, 2)])
def test_group_matches_brute_force(n, p):
    elems, _ = ff._sp_elements(std_space(n, GF(p)))
    assert set(elems) == brute_sp(n, p)


def test_group_closure():
    V = std_space(2, GF(2))
    elems, gens = ff._sp_elements(V)
    assert ff.group_is_closed(elems, gens, ff._int_gram(V), 2)
    # dropping an element breaks closure
    assert not ff.group_is_closed(elems[:-1], gens, ff._int_gram(V), 2)


def test_scale_guard():
    with pytest.raises(TooLarge):
        ff.enumerate_lagrangians(std_space(4, GF(2)))
    with pytest.raises(TooLarge):
        ff.enumerate_sp(std_space(1, GF(5)))
    with pytest.raises(TooLarge):
        ff.orbit_census(1, 3, 3)


# --- census -----------------------------------------------------------------


@pytest.mark.parametrize("m,n,p,total,sizes", [
    (1, 1, 2, 15, {0: 6, 1: 9}),
    (1, 1, 3, 40, {0: 24, 1: 16}),
    (1, 2, 2, 135, {0: 90, 1: 45}),
])
def test_census(m, n, p, total, sizes):
    r = ff.orbit_census(m, n, p)
    assert r.total_lagrangians == total == ff.lagrangian_count(m + n, p)
    assert r.orbit_count == m + 1
    assert r.agreement and r.group_closed
    assert {o["invariant_i"]: o["size"] for o in r.orbits} == sizes
    assert sum(o["size"] for o in r.orbits) == total


def test_census_generator_mode_agrees():
    full = ff.orbit_census(1, 1, 3, action="group")
    gens = ff.orbit_census(1, 1, 3, action="generators")
    assert full.orbits == gens.orbits


def test_census_is_thread_independent():
    one = ff.orbit_census(1, 1, 3, threads=1).to_json()
    four = ff.orbit_census(1, 1, 3, threads=4).to_json()
    assert one == four


def test_census_orbit_sizes_divide_group_order():
    r = ff.orbit_census(1, 1, 3)
    order = r.group_orders[0] * r.group_orders[1]
    assert all(order % o["size"] == 0 for o in r.orbits)


def test_census_swaps_factor_order():
    assert ff.orbit_census(2, 1, 2).to_json() == ff.orbit_census(1, 2, 2).to_json()


def test_int_keys_match_canonical_subspaces():
    F = GF(3)
    V = std_space(2, F)
    for k in ff._lagrangian_keys(ff._int_gram(V), 3)[:10]:
        U = Subspace.span(F, 4, k)
        assert tuple(tuple(int(x) for x in v) for v in U.vectors()) == k
        assert Mat.from_cols(F, U.vectors()).rank() == 2
