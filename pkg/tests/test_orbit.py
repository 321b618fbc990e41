from __future__ import annotations

import random

import pytest

from oracles import orbit_members_brute, pairwise_min_distance
from orbcodes.errors import CapExceededError, OrbitError, PreconditionError
from orbcodes.gf import FieldAut, build_tower
from orbcodes.orbit import (
    OrbitCode,
    _intersection_dim_scaled,
    canonical_orbit_rep,
    canonical_with_scalar,
    distance_distribution,
    min_distance,
    min_distance_witness,
    orbit_members,
    orbit_size,
)
from orbcodes.subspace import (
    all_subspaces,
    aut_image,
    is_sidon,
    linearity_field,
    random_subspace,
    scale,
    span,
    subfield_subspace,
    zero_subspace,
)


def test_orbit_size_examples():
    t = build_tower(2, 1, 6)
    assert orbit_size(subfield_subspace(t, 3)) == 9
    assert orbit_size(subfield_subspace(t, 2)) == 21
    S = span(t, [1, t.g, t.power(t.g, 2)])
    assert linearity_field(S) == 1
    assert orbit_size(S) == 63
    t = build_tower(3, 1, 4)
    assert orbit_size(span(t, [1, t.g])) == 40
    with pytest.raises(PreconditionError):
        orbit_size(zero_subspace(t))


@pytest.mark.parametrize("p,h,n", [(2, 1, 6), (3, 1, 4), (2, 2, 4), (2, 1, 12), (3, 1, 6), (2, 3, 2)])
def test_orbit_size_against_brute_count(p, h, n):
    t = build_tower(p, h, n)
    rng = random.Random(n + 10 * p)
    for _ in range(12):
        S = random_subspace(t, rng.randint(1, n), rng)
        size = orbit_size(S)
        assert size == len(orbit_members_brute(S))
        assert size * (t.q ** linearity_field(S) - 1) == t.q**n - 1
        members = [M for _, M in orbit_members(S)]
        assert len(set(members)) == size


def test_min_distance_examples():
    t = build_tower(2, 1, 6)
    assert min_distance(subfield_subspace(t, 3)) == 6
    assert min_distance(subfield_subspace(t, 2)) == 4
    with pytest.raises(OrbitError):
        min_distance(span(t, range(1, 64)))
    t = build_tower(2, 1, 7)
    S = next(S for S in all_subspaces(t, 3) if is_sidon(S))
    assert min_distance(S) == 4


@pytest.mark.parametrize("p,h,n", [(2, 1, 6), (2, 1, 7), (3, 1, 5), (2, 2, 4), (2, 1, 8), (5, 1, 4), (2, 1, 10)])
def test_min_distance_against_pairwise_and_rank(p, h, n):
    t = build_tower(p, h, n)
    rng = random.Random(3 * n + p)
    trials = 6 if t.order > 256 else 15
    for _ in range(trials):
        S = random_subspace(t, rng.randint(1, n - 1), rng)
        d, alpha = min_distance_witness(S)
        assert d % 2 == 0 and 2 <= d <= 2 * S.k
        assert S.scale(alpha) != S
        assert 2 * S.k - 2 * _intersection_dim_scaled(S, alpha) == d
        rank_best = max(
            _intersection_dim_scaled(S, t.exp[i]) for i in range(1, t.proj) if S.scale(t.exp[i]) != S
        )
        assert d == 2 * S.k - 2 * rank_best
        if orbit_size(S) <= 400:
            assert d == pairwise_min_distance(S)


@pytest.mark.parametrize("p,h,n", [(2, 1, 6), (2, 1, 7), (3, 1, 5), (2, 2, 4), (2, 2, 5), (3, 1, 6)])
def test_distance_trichotomy_exhaustive(p, h, n):
    t = build_tower(p, h, n)
    for S in all_subspaces(t, 3):
        d = min_distance(S)
        if linearity_field(S) == 3:
            assert d == 6
        elif is_sidon(S):
            assert d == 4
        else:
            assert d == 2


def test_distance_distribution():
    t = build_tower(2, 1, 6)
    assert distance_distribution(subfield_subspace(t, 3)) == {6: 8}
    rng = random.Random(1)
    for _ in range(20):
        S = random_subspace(t, 3, rng)
        dist = distance_distribution(S)
        assert min(dist) == min_distance(S)
        assert sum(dist.values()) == orbit_size(S) - 1
        brute = {}
        for _, M in list(orbit_members(S))[1:]:
            d = 2 * S.k - 2 * S.intersection_dim(M)
            brute[d] = brute.get(d, 0) + 1
        assert dist == brute
    with pytest.raises(CapExceededError):
        distance_distribution(S, bound=10)


@pytest.mark.parametrize("p,h,n", [(2, 1, 6), (3, 1, 4), (2, 2, 3), (2, 1, 9)])
def test_canonical_rep_invariance(p, h, n):
    t = build_tower(p, h, n)
    rng = random.Random(17 + n)
    for _ in range(40):
        S = random_subspace(t, rng.randint(1, n), rng)
        a = t.random_nonzero(rng)
        T = scale(a, S)
        C, beta = canonical_with_scalar(S)
        assert C == S.scale(beta)
        assert canonical_orbit_rep(T) == C
        assert C == min((M for _, M in orbit_members(S)), key=lambda M: M.basis)
        s = FieldAut(rng.randrange(t.m), t.m)
        assert canonical_orbit_rep(aut_image(S, s)) == canonical_orbit_rep(aut_image(T, s))


def test_canonical_rep_separates_orbits():
    t = build_tower(2, 1, 6)
    reps = {canonical_orbit_rep(S) for S in all_subspaces(t, 3)}
    # every orbit has 63 or 9 members; 1395 = 9 + 63 * 22
    assert len(reps) == 23


def test_orbit_code_report():
    t = build_tower(2, 1, 6)
    code = OrbitCode.from_subspace(subfield_subspace(t, 3, t.g))
    rep = code.report()
    assert rep["size"] == 9 and rep["min_distance"] == 6
    assert rep["distance_distribution"] == {"6": 8}
    assert rep["rep"] == canonical_orbit_rep(subfield_subspace(t, 3)).serialize()
