"""Subspaces V_{f,gamma} = {u + gamma f(u) : u in F_{q^3}} for q-polynomials f
over F_{q^3}, their decomposition, the x^q / trace dichotomy, Sidon criteria
for n = 6 and the GL(2, q^3) equivalence test.

Throughout, K denotes the subfield F_{q^3} of the tower; 3 must divide n.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .errors import PreconditionError
from .gf import FieldAut, FieldTower
from .classify import EquivWitness, class_key
from .subspace import Subspace, delta_t, fqt_span, span


class VKind(str, enum.Enum):
    XQ = "xq"
    TRACE = "trace"


XqClass = VKind.XQ
TraceClass = VKind.TRACE


def _need_cubic(tower: FieldTower):
    if tower.n % 3:
        raise PreconditionError(f"3 does not divide n={tower.n}")


def _need_gamma(tower: FieldTower, gamma: int):
    _need_cubic(tower)
    if tower.in_subfield(gamma, 3):
        raise PreconditionError("gamma must lie outside F_(q^3)")


def cubic_basis(tower: FieldTower) -> list[int]:
    """1, c, c^2 for c the primitive element of F_{q^3}: an F_q-basis of K."""
    c = tower.subfield_generator(3)
    return [1, c, tower.mul(c, c)]


# -- q-polynomials -----------------------------------------------------------


@dataclass(frozen=True)
class QPoly:
    """f(x) = a0 x + a1 x^q + a2 x^(q^2) with coefficients in F_{q^3}."""

    tower: FieldTower
    coeffs: tuple[int, int, int]

    def __post_init__(self):
        _need_cubic(self.tower)
        if len(self.coeffs) != 3:
            raise PreconditionError("a q-polynomial over F_(q^3) has three coefficients")
        for a in self.coeffs:
            self.tower.check(a)
            if not self.tower.in_subfield(a, 3):
                raise PreconditionError(f"coefficient {a} is not in F_(q^3)")

    @classmethod
    def xq(cls, tower: FieldTower) -> QPoly:
        return cls(tower, (0, 1, 0))

    @classmethod
    def trace(cls, tower: FieldTower) -> QPoly:
        return cls(tower, (1, 1, 1))

    def __call__(self, u: int) -> int:
        t = self.tower
        out = 0
        x = u
        for a in self.coeffs:
            if a:
                out = t.add(out, t.mul(a, x))
            x = t.q_power(x, 1)
        return out

    def is_scalar(self) -> bool:
        """Whether f = c x for some c."""
        return self.coeffs[1] == 0 and self.coeffs[2] == 0

    def serialize(self) -> list[int]:
        return list(self.coeffs)


def _solve(t: FieldTower, mat: list[list[int]], rhs: list[int]) -> list[int] | None:
    """Solve mat x = rhs over F_{q^n}; None if singular."""
    n = len(mat)
    rows = [list(r) + [b] for r, b in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = t.inv(rows[col][col])
        rows[col] = [t.mul(inv, x) for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                c = rows[r][col]
                rows[r] = [t.sub(x, t.mul(c, y)) for x, y in zip(rows[r], rows[col])]
    return [r[n] for r in rows]


def interpolate_qpoly(tower: FieldTower, pairs) -> QPoly:
    """The unique f of q-degree <= 2 with f(u_i) = v_i for an F_q-basis u_1, u_2, u_3 of K."""
    _need_cubic(tower)
    pairs = list(pairs)
    if len(pairs) != 3:
        raise PreconditionError("need exactly three (u, v) pairs")
    us = [u for u, _ in pairs]
    if any(not tower.in_subfield(x, 3) for pr in pairs for x in pr):
        raise PreconditionError("interpolation points must lie in F_(q^3)")
    if span(tower, us).k != 3:
        raise PreconditionError("the u-values are F_q-dependent")
    moore = [[u, tower.q_power(u, 1), tower.q_power(u, 2)] for u in us]
    sol = _solve(tower, moore, [v for _, v in pairs])
    if sol is None:
        raise AssertionError("singular Moore matrix for independent points")
    return QPoly(tower, tuple(sol))


# -- V_{f,gamma} --------------------------------------------------------------


@dataclass(frozen=True)
class VForm:
    f: QPoly
    gamma: int
    subspace: Subspace

    def serialize(self) -> dict:
        return {"f": self.f.serialize(), "gamma": self.gamma}


def build_v(f: QPoly, gamma: int) -> VForm:
    t = f.tower
    _need_gamma(t, gamma)
    gens = [t.add(u, t.mul(gamma, f(u))) for u in cubic_basis(t)]
    return VForm(f, gamma, span(t, gens))


def _line_modulus(t: FieldTower) -> int:
    # x, y span the same K-line iff log x = log y mod this
    return (t.q**t.n - 1) // (t.q**3 - 1)


def _line_key(t: FieldTower, x: int) -> int:
    return t.log[x] % _line_modulus(t)


def _need_delta3_two(S: Subspace):
    _need_cubic(S.tower)
    if S.k != 3:
        raise PreconditionError(f"expected a 3-dimensional subspace, got k={S.k}")
    d = delta_t(S, 3)
    if d != 2:
        raise PreconditionError(f"delta_3(S) = {d}, expected 2")


def span_lines(S: Subspace) -> list[int]:
    """One representative per K-line of <S>_K, in a fixed scan order.

    With w1 the first basis element of S and w2 the first one outside w1 K:
    w1 + c w2 for c in K, then w2.
    """
    t = S.tower
    w1 = S.basis[0]
    k1 = _line_key(t, w1)
    w2 = next(b for b in S.basis if _line_key(t, b) != k1)
    out = [t.add(w1, t.mul(c, w2)) for c in t.subfield_elements(3)]
    out.append(w2)
    return out


def _touched_lines(S: Subspace) -> set[int]:
    t = S.tower
    return {_line_key(t, s) for s in S.points}


def find_complement_line(S: Subspace) -> int:
    """A representative lam of a K-line inside <S>_K that meets S only in 0."""
    _need_delta3_two(S)
    t = S.tower
    touched = _touched_lines(S)
    for lam in span_lines(S):
        if _line_key(t, lam) not in touched:
            return lam
    raise AssertionError("every K-line of <S>_K meets S; impossible when delta_3 = 2")


def _split(t: FieldTower, x: int, gamma: int, K: list[int]) -> tuple[int, int]:
    """(u, v) in K^2 with x = u + gamma v."""
    for v in K:
        u = t.sub(x, t.mul(gamma, v))
        if t.in_subfield(u, 3):
            return u, v
    raise AssertionError("element outside K + gamma K")


@dataclass(frozen=True)
class Decomposition:
    """S = {rho u + lam f(u) : u in K}; rho^-1 S = V_{f, gamma} with gamma = lam/rho."""

    rho: int
    lam: int
    f: QPoly
    gamma: int

    def vform(self) -> VForm:
        return build_v(self.f, self.gamma)

    def to_dict(self) -> dict:
        return {"rho": self.rho, "lam": self.lam, "f": self.f.serialize(), "gamma": self.gamma}


def decompose(S: Subspace, lam: int | None = None, rho: int | None = None) -> Decomposition:
    """Write S as {rho u + lam f(u)}.

    By default lam is :func:`find_complement_line` and rho is the first line
    representative meeting S.  Explicit choices are validated.
    """
    _need_delta3_two(S)
    t = S.tower
    touched = _touched_lines(S)
    W = fqt_span(S, 3)
    if lam is None:
        lam = find_complement_line(S)
    elif lam == 0 or not W.contains(lam) or _line_key(t, lam) in touched:
        raise PreconditionError("lam must span a K-line of <S>_K meeting S trivially")
    if rho is None:
        rho = next(r for r in span_lines(S) if _line_key(t, r) in touched)
    elif rho == 0 or not W.contains(rho) or _line_key(t, rho) == _line_key(t, lam):
        raise PreconditionError("rho must lie in <S>_K outside lam K")
    gamma = t.div(lam, rho)
    K = t.subfield_elements(3)
    pairs = [_split(t, t.div(s, rho), gamma, K) for s in S.basis]
    f = interpolate_qpoly(t, pairs)
    return Decomposition(rho, lam, f, gamma)


# -- pair spaces U in K^2 -----------------------------------------------------


@dataclass(frozen=True)
class USpace:
    """An F_q-subspace of K^2 given by basis pairs."""

    tower: FieldTower
    basis: tuple[tuple[int, int], ...]

    @classmethod
    def graph(cls, f: QPoly) -> USpace:
        """U_f = {(u, f(u))}."""
        return cls(f.tower, tuple((u, f(u)) for u in cubic_basis(f.tower)))

    def elements(self) -> list[tuple[int, int]]:
        t = self.tower
        out = []
        for cs in itertools.product(t.fq, repeat=len(self.basis)):
            x = y = 0
            for c, (a, b) in zip(cs, self.basis):
                if c:
                    x = t.add(x, t.mul(c, a))
                    y = t.add(y, t.mul(c, b))
            out.append((x, y))
        return out

    def dim(self) -> int:
        q = self.tower.q
        m = len(set(self.elements()))
        d = 0
        while q**d < m:
            d += 1
        return d

    def transform(self, sigma, A) -> USpace:
        """U^sigma * A for A = ((c, d), (a, b)) acting on row vectors."""
        t = self.tower
        (c, d), (a, b) = A
        out = []
        for x, y in self.basis:
            x, y = t.frobenius(x, sigma), t.frobenius(y, sigma)
            out.append((t.add(t.mul(x, c), t.mul(y, a)), t.add(t.mul(x, d), t.mul(y, b))))
        return USpace(t, tuple(out))


def weight_spectrum(U: USpace) -> tuple[int, ...]:
    """(N_0, .., N_3): K-lines of K^2 meeting U in F_q-dimension i."""
    t = U.tower
    q = t.q
    if U.dim() != 3:
        raise PreconditionError("weight spectrum needs a 3-dimensional pair space")
    per_line: dict = {}
    for x, y in U.elements():
        if x == 0 and y == 0:
            continue
        key = ("inf",) if x == 0 else t.div(y, x)
        per_line[key] = per_line.get(key, 0) + 1
    dims = {q**i - 1: i for i in range(4)}
    N = [0, 0, 0, 0]
    for c in per_line.values():
        N[dims[c]] += 1
    N[0] = q**3 + 1 - sum(N[1:])
    return tuple(N)


def classify_v(S: Subspace, decomposition: Decomposition | None = None) -> VKind:
    """x^q class iff U_f is scattered (N_2 = 0)."""
    dec = decomposition if decomposition is not None else decompose(S)
    N = weight_spectrum(USpace.graph(dec.f))
    return XqClass if N[2] == 0 and N[3] == 0 else TraceClass


def template(tower: FieldTower, kind: VKind, gamma: int) -> VForm:
    f = QPoly.xq(tower) if VKind(kind) is XqClass else QPoly.trace(tower)
    return build_v(f, gamma)


def sidon_v(tower: FieldTower, kind: VKind, gamma: int) -> bool:
    """Sidon criterion for the templates V_{x^q, gamma} and V_{Tr, gamma}."""
    _need_gamma(tower, gamma)
    if tower.n > 6:
        return True
    kind = VKind(kind)
    if kind is XqClass:
        return tower.rel_norm(gamma, 6, 1) != 1
    # -2 taken in the prime field
    return tower.rel_trace(gamma, 6, 1) != tower.prime_field(-2)


def template_index(tower: FieldTower) -> dict:
    """class_key basis -> (kind, gamma) for the first gamma realising it."""
    _need_cubic(tower)
    index: dict = {}
    for gamma in tower.nonzero():
        if tower.in_subfield(gamma, 3):
            continue
        for kind in (XqClass, TraceClass):
            key = class_key(template(tower, kind, gamma).subspace).basis
            index.setdefault(key, (kind, gamma))
    return index


# -- GL(2, q^3) equivalence ---------------------------------------------------


@dataclass(frozen=True)
class CpszWitness:
    """V1 = lam * V2^sigma, from U2^sigma = U1 * A, A = ((c, d), (a, b)),
    gamma1 = (a + b gamma2^sigma)/(c + d gamma2^sigma), lam = 1/(c + d gamma2^sigma).
    """

    A: tuple[tuple[int, int], tuple[int, int]]
    sigma: FieldAut
    lam: int

    def equiv(self) -> EquivWitness:
        (c, d), (a, b) = self.A
        return EquivWitness(self.lam, self.sigma, {"A": [[c, d], [a, b]]})

    def to_dict(self) -> dict:
        (c, d), (a, b) = self.A
        return {"A": [[c, d], [a, b]], "sigma": self.sigma.j, "lam": self.lam}


def _need_form(V: VForm):
    t = V.f.tower
    _need_gamma(t, V.gamma)
    if V.f.is_scalar():
        raise PreconditionError("f = c x gives delta_3 = 1")


def cpsz_equivalent(V1: VForm, V2: VForm) -> CpszWitness | None:
    """Search (sigma, A) with U2^sigma = U1 * A and the gamma-compatibility.

    (c, d) runs over K^2; compatibility then fixes (a, b) uniquely through
    a + b gamma2^sigma = gamma1 (c + d gamma2^sigma).  U1 is the graph of f1,
    so membership of a row (x, y) is y = f1(x).
    """
    t = V1.f.tower
    t.check_same(V2.f.tower)
    _need_form(V1)
    _need_form(V2)
    K = t.subfield_elements(3)
    f1 = V1.f
    U2 = USpace.graph(V2.f)
    for sigma in t.automorphisms():
        g2 = t.frobenius(V2.gamma, sigma)
        lookup = {t.add(a, t.mul(b, g2)): (a, b) for a in K for b in K}
        rows = [(t.frobenius(x, sigma), t.frobenius(y, sigma)) for x, y in U2.basis]
        for c, d in itertools.product(K, repeat=2):
            den = t.add(c, t.mul(d, g2))
            if den == 0:
                continue
            ab = lookup.get(t.mul(V1.gamma, den))
            if ab is None:
                continue
            a, b = ab
            det = t.sub(t.mul(c, b), t.mul(d, a))
            if det == 0:
                continue
            # A^-1 = det^-1 ((b, -d), (-a, c))
            ok = True
            for x, y in rows:
                x1 = t.div(t.sub(t.mul(x, b), t.mul(y, a)), det)
                y1 = t.div(t.sub(t.mul(y, c), t.mul(x, d)), det)
                if f1(x1) != y1:
                    ok = False
                    break
            if ok:
                return CpszWitness(((c, d), (a, b)), sigma, t.inv(den))
    return None


def cpsz_equivalent_subspaces(S1: Subspace, S2: Subspace) -> EquivWitness | None:
    """equivalence of delta_3 = 2 subspaces through their decompositions."""
    t = S1.tower
    t.check_same(S2.tower)
    d1, d2 = decompose(S1), decompose(S2)
    w = cpsz_equivalent(d1.vform(), d2.vform())
    if w is None:
        return None
    # S1 = rho1 V1 = rho1 lam V2^sigma = rho1 lam rho2^-sigma S2^sigma
    alpha = t.div(t.mul(d1.rho, w.lam), t.frobenius(d2.rho, w.sigma))
    return EquivWitness(alpha, w.sigma, {"A": w.to_dict()["A"]})
