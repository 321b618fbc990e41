"""One-orbit cyclic codes Orb(S) = {alpha S : alpha in F_{q^n}^*}."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import CapExceededError, OrbitError, PreconditionError
from .subspace import Subspace, _echelon, linearity_field

DEFAULT_DISTRIBUTION_BOUND = 100_000


def _nonzero(S: Subspace):
    if S.k == 0:
        raise PreconditionError("the zero subspace has no orbit code")


def orbit_size(S: Subspace) -> int:
    """(q^n - 1)/(q^d - 1) for d the degree of the linearity field of S."""
    _nonzero(S)
    q, n = S.tower.q, S.n
    return (q**n - 1) // (q ** linearity_field(S) - 1)


def orbit_members(S: Subspace):
    """Yield (alpha, alpha*S) once per distinct member, starting with alpha = 1."""
    t = S.tower
    for i in range(orbit_size(S)):
        alpha = t.exp[i]
        yield alpha, S.scale(alpha)


def canonical_with_scalar(S: Subspace) -> tuple[Subspace, int]:
    """(C, beta) with C = beta*S the lexicographically smallest orbit member.

    The smallest member always has 1 as its first echelon row, so only the
    inverses of the projective points of S need to be tried.
    """
    _nonzero(S)
    t = S.tower
    if len(S.points) <= t.proj:
        candidates = [t.inv(s) for s in S.points]
    else:
        candidates = [t.exp[i] for i in range(t.proj)]
    best, best_alpha = None, None
    for alpha in candidates:
        C = S.scale(alpha)
        if best is None or C.basis < best.basis:
            best, best_alpha = C, alpha
    return best, best_alpha


def canonical_orbit_rep(S: Subspace) -> Subspace:
    return canonical_with_scalar(S)[0]


def _intersection_dim_scaled(S: Subspace, alpha: int) -> int:
    """dim(S & alpha S) by rank; the slow path, kept as an independent check."""
    t = S.tower
    rows = _echelon(t, [t.mul(alpha, b) for b in S.basis], S._rows())
    return 2 * S.k - len(rows)


def _point_dims(q: int, k: int) -> dict[int, int]:
    return {(q**i - 1) // (q - 1): i for i in range(k + 1)}


def overlap_counts(S: Subspace) -> Counter:
    """For each residue a mod (q^n-1)/(q-1), the number of projective points of
    S that g^a maps back into S, i.e. |P(S & g^a S)|.

    Points are identified by log mod (q^n-1)/(q-1), so this is the
    difference multiset of those residues.
    """
    t = S.tower
    M, log = t.proj, t.log
    res = [log[x] % M for x in S.points]
    return Counter((a - b) % M for a in res for b in res)


def min_distance_witness(S: Subspace) -> tuple[int, int]:
    """(d(Orb(S)), alpha) where alpha attains max dim(S & alpha S) with alpha S != S."""
    _nonzero(S)
    if orbit_size(S) == 1:
        raise OrbitError("Orb(F_{q^n}) has a single member; its minimum distance is undefined")
    t = S.tower
    k = S.k
    npts = len(S.points)
    dims = _point_dims(t.q, k)
    best, witness = 0, t.g
    for a, c in sorted(overlap_counts(S).items()):
        if c == npts:
            continue  # g^a S = S
        if dims[c] > best:
            best, witness = dims[c], t.exp[a]
    return 2 * k - 2 * best, witness


def min_distance(S: Subspace) -> int:
    return min_distance_witness(S)[0]


def distance_distribution(S: Subspace, bound: int = DEFAULT_DISTRIBUTION_BOUND) -> dict[int, int]:
    """Histogram of d(S, alpha S) over the members alpha S != S."""
    size = orbit_size(S)
    if size > bound:
        raise CapExceededError(f"orbit size {size} exceeds bound {bound}")
    counts = overlap_counts(S)
    dims = _point_dims(S.tower.q, S.k)
    hist = Counter(2 * S.k - 2 * dims[counts.get(i, 0)] for i in range(1, size))
    return dict(sorted(hist.items()))


@dataclass(frozen=True)
class OrbitCode:
    rep: Subspace
    size: int
    min_distance: int
    k: int
    n: int

    @classmethod
    def from_subspace(cls, S: Subspace) -> OrbitCode:
        return cls(
            rep=canonical_orbit_rep(S),
            size=orbit_size(S),
            min_distance=min_distance(S),
            k=S.k,
            n=S.n,
        )

    def report(self, bound: int = DEFAULT_DISTRIBUTION_BOUND) -> dict:
        return {
            "rep": self.rep.serialize(),
            "size": self.size,
            "min_distance": self.min_distance,
            "distance_distribution": {str(d): c for d, c in distance_distribution(self.rep, bound).items()},
        }
