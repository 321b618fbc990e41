"""F_q-subspaces of F_{q^n} and their invariants.

A :class:`Subspace` stores its reduced row-echelon basis.  Rows are element
codes; a row's pivot is its first nonzero F_q-coordinate (coordinate 0 being
the coefficient of 1), pivots are normalised to 1, every other row is zero
in each pivot column, and rows are sorted by pivot.  This basis is unique,
so it doubles as the canonical serialisation and as the equality/hash key.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import cached_property

from .errors import PreconditionError, ValidationError
from .gf import FieldAut, FieldTower, Felt, divisors


def _code(a) -> int:
    return a.code if isinstance(a, Felt) else a


def _echelon(tower: FieldTower, gens, rows=None) -> list[list[int]]:
    """Insert ``gens`` into the fully reduced row list ``rows`` ([pivot, row] pairs)."""
    rows = [list(r) for r in rows] if rows else []
    if tower.binary:
        for v in gens:
            for pb, r in rows:
                if v >> pb & 1:
                    v ^= r
            if v:
                lowbit = v & -v
                pb = lowbit.bit_length() - 1
                for row in rows:
                    if row[1] & lowbit:
                        row[1] ^= v
                rows.append([pb, v])
        return rows
    coord, sub, mul, div = tower.coord, tower.sub, tower.mul, tower.div
    for v in gens:
        for piv, r in rows:
            c = coord(v, piv)
            if c:
                v = sub(v, mul(c, r))
        if v:
            piv, c = tower.lead(v)
            if c != 1:
                v = div(v, c)
            for row in rows:
                c = coord(row[1], piv)
                if c:
                    row[1] = sub(row[1], mul(c, v))
            rows.append([piv, v])
    return rows


def _reduce(tower: FieldTower, v: int, basis, pivots) -> int:
    if tower.binary:
        for pb, r in zip(pivots, basis):
            if v >> pb & 1:
                v ^= r
        return v
    for piv, r in zip(pivots, basis):
        c = tower.coord(v, piv)
        if c:
            v = tower.sub(v, tower.mul(c, r))
    return v


class Subspace:
    """An F_q-subspace of F_{q^n}, immutable, in canonical echelon form.

    Build one with :func:`span`; the constructor trusts its arguments.
    """

    def __init__(self, tower: FieldTower, basis: tuple[int, ...], pivots: tuple[int, ...]):
        self.tower = tower
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def _from_rows(cls, tower, rows) -> Subspace:
        rows = sorted(rows)
        return cls(tower, tuple(r for _, r in rows), tuple(p for p, _ in rows))

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return self.tower.n

    def __len__(self):
        return self.k

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.basis == other.basis and self.tower == other.tower

    def __hash__(self):
        return hash(self.basis)

    def __lt__(self, other: Subspace):
        return self.basis < other.basis

    def __repr__(self):
        return f"Subspace(k={self.k}, basis={list(self.basis)})"

    def serialize(self) -> list[int]:
        return list(self.basis)

    def _rows(self):
        return list(zip(self.pivots, self.basis))

    # -- membership and enumeration ------------------------------------------

    def reduce(self, a: int) -> int:
        """Residue of a modulo the subspace (zero iff a is a member)."""
        return _reduce(self.tower, _code(a), self.basis, self.pivots)

    def contains(self, a) -> bool:
        return self.reduce(a) == 0

    __contains__ = contains

    def _walk(self):
        t = self.tower
        points = []
        tail = [0]
        for b in reversed(self.basis):
            points.extend(t.add(b, x) for x in tail)
            tail = [t.add(x, t.mul(c, b)) for x in tail for c in t.fq]
        return points, tail

    @cached_property
    def points(self) -> tuple[int, ...]:
        """One nonzero element per 1-dimensional subspace (projective point)."""
        return tuple(self._walk()[0])

    @cached_property
    def elements(self) -> frozenset[int]:
        return frozenset(self._walk()[1])

    # -- images ----------------------------------------------------------------

    def scale(self, alpha) -> Subspace:
        alpha = _code(alpha)
        if alpha == 0:
            raise PreconditionError("scaling by zero")
        if alpha == 1:
            return self
        t = self.tower
        return Subspace._from_rows(t, _echelon(t, [t.mul(alpha, b) for b in self.basis]))

    def aut_image(self, sigma) -> Subspace:
        t = self.tower
        j = sigma.j if isinstance(sigma, FieldAut) else sigma
        if j % t.m == 0:
            return self
        return Subspace._from_rows(t, _echelon(t, [t.frobenius(b, j) for b in self.basis]))

    def is_stable_under(self, alpha: int) -> bool:
        """Whether alpha*S is contained in (hence equal to) S."""
        t = self.tower
        return all(self.contains(t.mul(alpha, b)) for b in self.basis)

    # -- lattice ---------------------------------------------------------------

    def __add__(self, other: Subspace) -> Subspace:
        self.tower.check_same(other.tower)
        return Subspace._from_rows(self.tower, _echelon(self.tower, other.basis, self._rows()))

    def sum_dim(self, other: Subspace) -> int:
        return len(_echelon(self.tower, other.basis, self._rows()))

    def intersection_dim(self, other: Subspace) -> int:
        self.tower.check_same(other.tower)
        return self.k + other.k - self.sum_dim(other)

    def __and__(self, other: Subspace) -> Subspace:
        self.tower.check_same(other.tower)
        t = self.tower
        # kernel of s -> (s mod other): eliminate on residues, carry s along
        rows = []
        kernel = []
        for s in self.basis:
            r = other.reduce(s)
            for piv, rr, ss in rows:
                c = t.coord(r, piv)
                if c:
                    r = t.sub(r, t.mul(c, rr))
                    s = t.sub(s, t.mul(c, ss))
            if r == 0:
                kernel.append(s)
                continue
            piv, c = t.lead(r)
            if c != 1:
                r, s = t.div(r, c), t.div(s, c)
            rows.append((piv, r, s))
        return span(t, kernel)

    intersect = __and__


def span(tower: FieldTower, gens) -> Subspace:
    """The F_q-span of ``gens`` (ints or Felts), echelonised."""
    codes = []
    for a in gens:
        if isinstance(a, Felt):
            tower.check_same(a.tower)
            a = a.code
        codes.append(tower.check(a))
    return Subspace._from_rows(tower, _echelon(tower, codes))


def zero_subspace(tower: FieldTower) -> Subspace:
    return Subspace(tower, (), ())


def subfield_subspace(tower: FieldTower, t: int, mu: int = 1) -> Subspace:
    """mu * F_{q^t} as an F_q-subspace."""
    c = tower.subfield_generator(t)
    return span(tower, [tower.mul(mu, tower.power(c, i)) for i in range(t)])


def scale(alpha, S: Subspace) -> Subspace:
    return S.scale(alpha)


def aut_image(S: Subspace, sigma) -> Subspace:
    return S.aut_image(sigma)


def lattice(S: Subspace, T: Subspace, kind: str) -> Subspace:
    if kind == "sum":
        return S + T
    if kind == "intersect":
        return S & T
    raise ValidationError(f"unknown lattice operation {kind!r}")


def contains(S: Subspace, a) -> bool:
    return S.contains(a)


def distance(U: Subspace, V: Subspace) -> int:
    """Subspace metric dim U + dim V - 2 dim(U & V)."""
    return U.k + V.k - 2 * U.intersection_dim(V)


def square_span(S: Subspace) -> Subspace:
    t = S.tower
    b = S.basis
    return span(t, [t.mul(b[i], b[j]) for i in range(len(b)) for j in range(i, len(b))])


def fqt_span(S: Subspace, t: int) -> Subspace:
    """<S>_{F_{q^t}}, by closing S under a generator of F_{q^t}."""
    S.tower._check_divisor(t)
    if t == 1 or S.k == 0:
        return S
    c = S.tower.subfield_generator(t)
    W = S
    while True:
        W2 = W + W.scale(c)
        if W2.k == W.k:
            return W
        W = W2


def largest_fqt_subspace(S: Subspace, t: int) -> Subspace:
    """The largest F_{q^t}-subspace inside S: the intersection of c^-i S, i < t."""
    S.tower._check_divisor(t)
    if t == 1 or S.k == 0:
        return S
    tw = S.tower
    c_inv = tw.inv(tw.subfield_generator(t))
    X = S
    shifted = S
    for _ in range(1, t):
        shifted = shifted.scale(c_inv)
        X = X & shifted
        if X.k < t:
            return zero_subspace(tw)
    return X


def delta_t(S: Subspace, t: int) -> int:
    """dim over F_{q^t} of the F_{q^t}-span of S (0 for the zero subspace)."""
    return fqt_span(S, t).k // t


def w_t(S: Subspace, t: int) -> int:
    """dim over F_{q^t} of the largest F_{q^t}-subspace contained in S."""
    return largest_fqt_subspace(S, t).k // t


def linearity_field(S: Subspace) -> int:
    """Largest d | n such that S is an F_{q^d}-subspace."""
    if S.k == 0:
        raise PreconditionError("linearity field of the zero subspace is undefined")
    for d in reversed(divisors(math.gcd(S.n, S.k))):
        if d == 1 or S.is_stable_under(S.tower.subfield_generator(d)):
            return d
    raise AssertionError("unreachable")


def is_sidon(S: Subspace) -> bool:
    """Sidon test: unordered pairs of projective points -> product cosets is injective.

    The coset ab F_q^* is identified by log(a) + log(b) mod (q^n-1)/(q-1).
    """
    if S.k <= 1:
        return True
    t = S.tower
    M, log = t.proj, t.log
    res = sorted(log[x] % M for x in S.points)
    seen = set()
    for i, a in enumerate(res):
        for b in res[i:]:
            key = (a + b) % M
            if key in seen:
                return False
            seen.add(key)
    return True


def hyperplane_scalar(H1: Subspace, H2: Subspace) -> int:
    """Some xi with H2 = xi * H1, for two hyperplanes of F_{q^n}."""
    H1.tower.check_same(H2.tower)
    t = H1.tower
    if H1.k != t.n - 1 or H2.k != t.n - 1:
        raise PreconditionError(f"both subspaces must have dimension n-1 = {t.n - 1}")
    for i in range(t.proj):
        xi = t.exp[i]
        if all(H2.contains(t.mul(xi, b)) for b in H1.basis):
            return xi
    raise AssertionError("no scalar found; the hyperplane lemma guarantees one")


@dataclass(frozen=True)
class InvariantProfile:
    """Semilinear-equivalence invariants of a subspace."""

    dim_square: int
    delta: dict = field(hash=False)
    w: dict = field(hash=False)
    linearity_degree: int
    sidon: bool

    def to_dict(self) -> dict:
        return {
            "dim_square": self.dim_square,
            "delta": {str(t): v for t, v in self.delta.items()},
            "w": {str(t): v for t, v in self.w.items()},
            "linearity_degree": self.linearity_degree,
            "sidon": self.sidon,
        }


def profile(S: Subspace) -> InvariantProfile:
    ts = divisors(S.n)
    return InvariantProfile(
        dim_square=square_span(S).k,
        delta={t: delta_t(S, t) for t in ts},
        w={t: w_t(S, t) for t in ts},
        linearity_degree=linearity_field(S),
        sidon=is_sidon(S),
    )


# -- enumeration -------------------------------------------------------------


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def pivot_patterns(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n), k))


def all_subspaces(tower: FieldTower, k: int, patterns=None):
    """Every k-dimensional subspace, generated directly as echelon matrices.

    ``patterns`` restricts to the given pivot tuples (a partition of the
    enumeration, see :func:`pivot_patterns`).
    """
    n = tower.n
    fq = tower.fq
    powers = [tower.power(tower.g, i) for i in range(n)]
    for pivots in patterns if patterns is not None else pivot_patterns(n, k):
        pset = set(pivots)
        free = [[j for j in range(pv + 1, n) if j not in pset] for pv in pivots]
        row_choices = []
        for pv, cols in zip(pivots, free):
            choices = []
            for vals in itertools.product(fq, repeat=len(cols)):
                v = powers[pv]
                for c, j in zip(vals, cols):
                    if c:
                        v = tower.add(v, tower.mul(c, powers[j]))
                choices.append(v)
            row_choices.append(choices)
        for rows in itertools.product(*row_choices):
            yield Subspace(tower, tuple(rows), pivots)


def random_subspace(tower: FieldTower, k: int, rng: random.Random) -> Subspace:
    if not 0 <= k <= tower.n:
        raise PreconditionError(f"dimension {k} out of range for n={tower.n}")
    rows = []
    while len(rows) < k:
        rows = _echelon(tower, [tower.random(rng)], rows)
    return Subspace._from_rows(tower, rows)
