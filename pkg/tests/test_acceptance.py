"""Acceptance criteria. Each test prints exactly one PASS/FAIL line."""

from __future__ import annotations

import itertools
import random
from collections import Counter, defaultdict
from functools import lru_cache

from oracles import sidon_definitional
from orbcodes.census import census
from orbcodes.classify import (
    class_key,
    classify3,
    equivalent,
    equivalent_famIV_fast,
    equivalent_poly_fast,
)
from orbcodes.errors import PreconditionError
from orbcodes.gf import FieldAut, build_tower, divisors
from orbcodes.orbit import canonical_orbit_rep, canonical_with_scalar, min_distance, orbit_size
from orbcodes.subspace import (
    all_subspaces,
    delta_t,
    is_sidon,
    linearity_field,
    random_subspace,
    scale,
    square_span,
    subfield_subspace,
    w_t,
)
from orbcodes.vform import (
    TraceClass,
    XqClass,
    classify_v,
    cpsz_equivalent_subspaces,
    sidon_v,
    template,
    template_index,
)


@lru_cache(maxsize=None)
def subspaces3(p, h, n):
    return tuple(all_subspaces(build_tower(p, h, n), 3))


@lru_cache(maxsize=None)
def orbit_reps(p, h, n):
    return tuple(sorted({canonical_orbit_rep(S) for S in subspaces3(p, h, n)}))


def gammas(t):
    return [g for g in t.nonzero() if not t.in_subfield(g, 3)]


# 1 -------------------------------------------------------------------------------


def test_criterion_1_distance_trichotomy(verdict):
    t = build_tower(2, 1, 6)
    F8_orbit = {S for S in (subfield_subspace(t, 3, a) for a in t.nonzero())}
    bad = 0
    hist = Counter()
    for S in subspaces3(2, 1, 6):
        d = min_distance(S)
        hist[d] += 1
        if d == 6:
            bad += S not in F8_orbit or orbit_size(S) != 9
        elif d == 4:
            bad += not is_sidon(S) or orbit_size(S) != 63
        elif d == 2:
            bad += is_sidon(S) or S in F8_orbit
        else:
            bad += 1
    ok = bad == 0 and set(hist) == {2, 4, 6} and hist[6] == len(F8_orbit) == 9
    verdict("criterion 1 (distance trichotomy, q=2 n=6)", ok, f"histogram {dict(sorted(hist.items()))}, violations {bad}")


# 2 -------------------------------------------------------------------------------


def profile_matches(t, lab):
    prof, fam, d = lab.profile, lab.family, lab.min_distance
    even = t.n % 2 == 0
    if fam == "I":
        return d == 6 and prof.linearity_degree == 3
    if fam == "II":
        return d == 2 and prof.dim_square == 4 and prof.delta.get(4) == 1 and prof.w.get(2) == 1
    if fam == "III":
        return d == 2 and prof.dim_square == 5 and (not even or (prof.delta[2] == 3 and prof.w[2] == 0))
    if fam == "IV":
        return d == 2 and prof.dim_square == 5 and prof.delta[2] == 2 and prof.w[2] == 1
    return d == 4 and prof.dim_square == 6 and prof.sidon


def test_criterion_2_classification_complete(verdict):
    parts, bad = [], 0
    for p, n in [(2, 5), (2, 6), (2, 7), (3, 6)]:
        t = build_tower(p, 1, n)
        counts = Counter()
        for S in subspaces3(p, 1, n):
            lab = classify3(S)
            counts[lab.family] += 1
            bad += not lab.verify(S) or not profile_matches(t, lab)
        parts.append(f"({p},{n}) {dict(sorted(counts.items()))}")
    verdict("criterion 2 (classification complete)", bad == 0, f"{'; '.join(parts)}; mismatches {bad}")


# 3 -------------------------------------------------------------------------------

SQUARE_BOUND_TOWERS = [
    (2, 1, 5), (2, 1, 6), (2, 1, 7), (2, 1, 8), (3, 1, 4), (3, 1, 5), (3, 1, 6),
    (5, 1, 4), (7, 1, 4), (2, 2, 4), (2, 2, 5), (2, 3, 4),
]


def test_criterion_3_sidon_square_bound(verdict):
    bad = total = sidon = 0
    for p, h, n in SQUARE_BOUND_TOWERS:
        it = subspaces3(p, h, n) if (p, h, n) in ((2, 1, 6), (2, 1, 7), (3, 1, 6)) else all_subspaces(build_tower(p, h, n), 3)
        for S in it:
            sq = square_span(S).k
            sid = is_sidon(S)
            total += 1
            sidon += sid
            bad += (sid and sq < 6) or (sid != (sq == 6))
    verdict(
        "criterion 3 (Sidon square bound)",
        bad == 0,
        f"{len(SQUARE_BOUND_TOWERS)} towers, {total} subspaces, {sidon} Sidon, exceptions {bad}",
    )


# 4 -------------------------------------------------------------------------------


def test_criterion_4_census_bounds(verdict):
    r5 = census(build_tower(2, 1, 5))
    r7 = census(build_tower(2, 1, 7))
    ok = r5.t == 1 == r5.lower and r7.t == 3 == r7.lower
    verdict(
        "criterion 4 (census lower bound)",
        ok,
        f"n=5 t={r5.t} lower={r5.lower}; n=7 t={r7.t} lower={r7.lower} upper={r7.upper}",
    )


# 5 -------------------------------------------------------------------------------


def test_criterion_5_sidon_criteria_n6(verdict):
    bad, parts = 0, []
    for p in (2, 3):
        t = build_tower(p, 1, 6)
        gs = gammas(t)
        xq_true = tr_true = 0
        for g in gs:
            xq = sidon_v(t, XqClass, g)
            tr = sidon_v(t, TraceClass, g)
            xq_true += xq
            tr_true += tr
            bad += xq != (t.rel_norm(g, 6, 1) != 1)
            bad += tr != (t.rel_trace(g, 6, 1) != t.prime_field(-2))
            if p == 2:
                bad += xq or tr != (t.rel_trace(g, 6, 1) == 1)
            for kind, claim in ((XqClass, xq), (TraceClass, tr)):
                S = template(t, kind, g).subspace
                bad += claim != sidon_definitional(t, S.elements) or claim != is_sidon(S)
        parts.append(f"q={p}: {len(gs)} gammas, xq Sidon {xq_true}, trace Sidon {tr_true}")
    verdict("criterion 5 (n=6 Sidon criteria)", bad == 0, f"{'; '.join(parts)}; disagreements {bad}")


# 6 -------------------------------------------------------------------------------


def test_criterion_6_optimum_trace_code(verdict):
    t = build_tower(2, 1, 6)
    good = []
    for g in gammas(t):
        if t.rel_trace(g, 6, 1) != 1:
            continue
        S = template(t, TraceClass, g).subspace
        if orbit_size(S) == 63 and min_distance(S) == 4:
            good.append(g)
    xq_good = [
        g for g in gammas(t)
        if orbit_size(template(t, XqClass, g).subspace) == 63 and min_distance(template(t, XqClass, g).subspace) == 4
    ]
    ok = bool(good) and not xq_good
    verdict("criterion 6 (optimum-distance trace code, q=2 n=6)", ok, f"{len(good)} trace gammas, first {good[:1]}; xq codes {len(xq_good)}")


# 7 -------------------------------------------------------------------------------


def dichotomy_check(t, subspaces):
    """Per-subspace classify_v, per-orbit witness to the predicted template,
    transported to every orbit member and verified."""
    index = template_index(t)
    orbits: dict = defaultdict(list)
    bad = 0
    count = 0
    for S in subspaces:
        if delta_t(S, 3) != 2:
            continue
        count += 1
        C, beta = canonical_with_scalar(S)
        orbits[C].append((S, beta, classify_v(S)))
    kinds = Counter()
    for C, members in orbits.items():
        kind = members[0][2]
        if any(k is not kind for _, _, k in members):
            bad += 1
            continue
        hit = index.get(class_key(C).basis)
        if hit is None or hit[0] is not kind:
            bad += 1
            continue
        T = template(t, *hit).subspace
        w = equivalent(C, T)
        if w is None:
            bad += 1
            continue
        kinds[kind.value] += len(members)
        # C = alpha T^sigma and C = beta S, so S = alpha/beta T^sigma
        Tsig = T.aut_image(w.sigma)
        for S, beta, _ in members:
            bad += Tsig.scale(t.div(w.alpha, beta)) != S
    return count, len(orbits), kinds, bad


def test_criterion_7_dichotomy_and_inequivalence(verdict):
    t6 = build_tower(2, 1, 6)
    n6 = dichotomy_check(t6, subspaces3(2, 1, 6))
    t9 = build_tower(2, 1, 9)
    n9 = dichotomy_check(t9, all_subspaces(t9, 3))
    rng = random.Random(7)
    gs = gammas(t6)
    cross = 0
    for _ in range(100):
        X = template(t6, XqClass, rng.choice(gs)).subspace
        T = template(t6, TraceClass, rng.choice(gs)).subspace
        cross += equivalent(X, T) is not None
    bad = n6[3] + n9[3] + cross
    detail = (
        f"n=6: {n6[0]} subspaces, {n6[1]} orbits {dict(n6[2])}; "
        f"n=9: {n9[0]} subspaces, {n9[1]} orbits {dict(n9[2])}; cross witnesses {cross}/100; violations {bad}"
    )
    verdict("criterion 7 (x^q / trace dichotomy)", bad == 0, detail)


# 8 -------------------------------------------------------------------------------

INVARIANCE_TOWERS = [(2, 1, 6), (2, 1, 7), (3, 1, 6), (2, 2, 4), (2, 1, 9)]


def invariants(S):
    lab = classify3(S)
    ds = divisors(S.n)
    return (
        square_span(S).k,
        tuple(delta_t(S, d) for d in ds),
        tuple(w_t(S, d) for d in ds),
        is_sidon(S),
        lab.family,
        orbit_size(S),
        min_distance(S),
        linearity_field(S),
    )


def test_criterion_8_invariance(verdict):
    bad = trials = 0
    for p, h, n in INVARIANCE_TOWERS:
        t = build_tower(p, h, n)
        rng = random.Random(1000 + 100 * p + 10 * h + n)
        for _ in range(500):
            S = random_subspace(t, 3, rng)
            a = t.random_nonzero(rng)
            s = FieldAut(rng.randrange(t.m), t.m)
            T = scale(a, S.aut_image(s))
            bad += invariants(S) != invariants(T)
            bad += square_span(scale(a, S)) != scale(t.mul(a, a), square_span(S))
            trials += 1
    verdict("criterion 8 (invariance suites)", bad == 0, f"{trials} trials over {len(INVARIANCE_TOWERS)} towers, failures {bad}")


# 9 -------------------------------------------------------------------------------


def compare(fast, S1, S2):
    """0 on agreement (fast witness verified), 1 otherwise; None if not applicable."""
    try:
        w = fast(S1, S2)
    except PreconditionError:
        return None
    b = equivalent(S1, S2)
    if (w is None) != (b is None):
        return 1
    return int(w is not None and not w.verify(S1, S2))


def poly_applicable(S):
    lab = classify3(S)
    return lab.family == "III" and lab.witness["degree"] > 4


def fast_checks(reps, rng=None, count=None, planted_tower=None):
    groups = {
        "poly": (equivalent_poly_fast, [R for R in reps if poly_applicable(R)]),
        "famIV": (equivalent_famIV_fast, [R for R in reps if classify3(R).family == "IV"]),
    }
    if reps and reps[0].n % 3 == 0:
        groups["cpsz"] = (cpsz_equivalent_subspaces, [R for R in reps if delta_t(R, 3) == 2])
    out = {}
    for name, (fast, pool) in groups.items():
        if not pool:
            continue
        if count is None:
            pairs = list(itertools.product(pool, repeat=2))
        else:
            t = planted_tower
            pairs = []
            for _ in range(count):
                S1 = rng.choice(pool)
                if rng.random() < 0.5:
                    S2 = rng.choice(pool)
                else:
                    S2 = S1.aut_image(FieldAut(rng.randrange(t.m), t.m)).scale(t.random_nonzero(rng))
                pairs.append((S1, S2))
        res = [compare(fast, a, b) for a, b in pairs]
        out[name] = (sum(r is not None for r in res), sum(r for r in res if r))
    return out


def test_criterion_9_fast_vs_brute(verdict):
    parts, bad = [], 0
    for p, n in [(2, 6), (2, 7)]:
        res = fast_checks(orbit_reps(p, 1, n))
        bad += sum(b for _, b in res.values())
        parts.append(f"({p},{n}) " + ", ".join(f"{k} {a} pairs/{b} bad" for k, (a, b) in res.items()))
    t = build_tower(3, 1, 6)
    rng = random.Random(36)
    pool = [random_subspace(t, 3, rng) for _ in range(3000)]
    res = fast_checks(pool, rng=rng, count=200, planted_tower=t)
    bad += sum(b for _, b in res.values())
    parts.append("(3,6) random " + ", ".join(f"{k} {a} pairs/{b} bad" for k, (a, b) in res.items()))
    verdict("criterion 9 (fast vs brute equivalence)", bad == 0, "; ".join(parts))
