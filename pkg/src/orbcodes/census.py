"""Exhaustive census of 3-dimensional one-orbit codes in a tower."""

from __future__ import annotations

import csv
import io
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import FAMILIES, class_key, classify3
from .errors import CapExceededError
from .gf import FieldTower
from .orbit import canonical_orbit_rep, orbit_size
from .subspace import Subspace, all_subspaces, gaussian_binomial, pivot_patterns

DEFAULT_ENUMERATION_CAP = 2_000_000


@dataclass
class CensusClass:
    rep: Subspace
    family: str
    orbits: int
    size: int
    min_distance: int
    delta: dict
    w: dict

    def to_dict(self) -> dict:
        return {
            "rep": self.rep.serialize(),
            "family": self.family,
            "orbits": self.orbits,
            "size": self.size,
            "min_distance": self.min_distance,
            "delta": {str(t): v for t, v in self.delta.items()},
            "w": {str(t): v for t, v in self.w.items()},
        }


@dataclass
class CensusReport:
    tower: dict
    total_subspaces: int
    orbit_count: int
    family_orbits: dict
    classes_by_distance: dict
    classes: list = field(repr=False)
    lower: Fraction | None = None
    upper: Fraction | None = None
    t: int | None = None

    @property
    def within_bounds(self) -> bool | None:
        if self.t is None:
            return None
        return self.lower <= self.t <= self.upper

    @property
    def attains_lower(self) -> bool | None:
        if self.t is None:
            return None
        return self.t == self.lower

    def bounds_dict(self) -> dict | None:
        if self.t is None:
            return None
        return {
            "t": self.t,
            "lower": str(self.lower),
            "upper": str(self.upper),
            "within": self.within_bounds,
            "attains_lower": self.attains_lower,
        }

    def to_dict(self) -> dict:
        return {
            "tower": self.tower,
            "total_subspaces": self.total_subspaces,
            "orbit_count": self.orbit_count,
            "family_orbits": self.family_orbits,
            "classes_by_distance": {str(d): c for d, c in sorted(self.classes_by_distance.items())},
            "bounds": self.bounds_dict(),
            "classes": [c.to_dict() for c in self.classes],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["rep", "family", "orbits", "size", "min_distance", "delta", "w"])
        for c in self.classes:
            wr.writerow([
                " ".join(map(str, c.rep.serialize())),
                c.family,
                c.orbits,
                c.size,
                c.min_distance,
                ";".join(f"{t}:{v}" for t, v in c.delta.items()),
                ";".join(f"{t}:{v}" for t, v in c.w.items()),
            ])
        return buf.getvalue()


def count_bounds(q: int, n: int, h: int) -> tuple[Fraction, Fraction]:
    """Bounds on the number of inequivalent distance-2 orbits (n odd)."""
    num = q ** (n - 1) - 1
    return Fraction(num, n * h * (q * q - 1)), Fraction(num, q * q - 1)


def _bucket(tower: FieldTower, patterns) -> Counter:
    return Counter(canonical_orbit_rep(S).basis for S in all_subspaces(tower, 3, patterns))


def enumerate_orbits(tower: FieldTower, jobs: int = 1) -> Counter:
    """Canonical orbit rep basis -> number of subspaces seen in that orbit."""
    patterns = pivot_patterns(tower.n, 3)
    if jobs <= 1 or len(patterns) < 2:
        return _bucket(tower, patterns)
    parts = [patterns[i::jobs] for i in range(jobs)]
    total = Counter()
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for c in ex.map(_bucket, [tower] * len(parts), parts):
            total.update(c)
    return total


def census(tower: FieldTower, cap: int = DEFAULT_ENUMERATION_CAP, jobs: int = 1) -> CensusReport:
    total = gaussian_binomial(tower.n, 3, tower.q)
    if total > cap:
        raise CapExceededError(f"{total} three-dimensional subspaces exceed the enumeration cap {cap}")
    buckets = enumerate_orbits(tower, jobs)
    seen = sum(buckets.values())
    if seen != total:
        raise AssertionError(f"enumerated {seen} subspaces, expected {total}")

    groups: dict = defaultdict(list)
    for basis, count in sorted(buckets.items()):
        rep = Subspace._from_rows(tower, [(tower.lead(b)[0], b) for b in basis])
        if count != orbit_size(rep):
            raise AssertionError(f"orbit of {rep!r} has {count} members, expected {orbit_size(rep)}")
        groups[class_key(rep).basis].append(rep)

    classes = []
    family_orbits = Counter()
    by_dist = Counter()
    for key in sorted(groups):
        reps = groups[key]
        rep = min(reps)
        lab = classify3(rep)
        classes.append(CensusClass(
            rep=rep,
            family=lab.family,
            orbits=len(reps),
            size=orbit_size(rep),
            min_distance=lab.min_distance,
            delta=lab.profile.delta,
            w=lab.profile.w,
        ))
        family_orbits[lab.family] += len(reps)
        by_dist[lab.min_distance] += 1

    report = CensusReport(
        tower=tower.spec(),
        total_subspaces=total,
        orbit_count=len(buckets),
        family_orbits={f: family_orbits.get(f, 0) for f in FAMILIES},
        classes_by_distance=dict(by_dist),
        classes=classes,
    )
    if tower.n % 2:
        report.lower, report.upper = count_bounds(tower.q, tower.n, tower.h)
        report.t = by_dist.get(2, 0)
    return report
