"""Classification of 3-dimensional subspaces into families I-V, and
semilinear equivalence S1 = alpha * S2^sigma.

Families (k = 3):

I    S = mu F_{q^3}
II   S = mu <1, lam, lam^2>, lam of degree 4            (dim S^2 = 4)
III  S = mu <1, lam, lam^2>, lam of degree > 4          (dim S^2 = 5)
IV   S = omega F_{q^2} + <mu>                           (dim S^2 = 5)
V    S Sidon                                           (dim S^2 = 6)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import PreconditionError
from .gf import FieldAut, FieldTower
from .orbit import canonical_with_scalar, min_distance
from .subspace import (
    InvariantProfile,
    Subspace,
    largest_fqt_subspace,
    profile,
    span,
    subfield_subspace,
)

FAMILIES = ("I", "II", "III", "IV", "V")


def _require_dim3(S: Subspace):
    if S.k != 3:
        raise PreconditionError(f"expected a 3-dimensional subspace, got k={S.k}")


# -- witnesses ---------------------------------------------------------------


@dataclass(frozen=True)
class EquivWitness:
    """S1 = alpha * S2^sigma."""

    alpha: int
    sigma: FieldAut
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    def apply(self, S2: Subspace) -> Subspace:
        return S2.aut_image(self.sigma).scale(self.alpha)

    def verify(self, S1: Subspace, S2: Subspace) -> bool:
        return self.alpha != 0 and self.apply(S2) == S1

    def to_dict(self) -> dict:
        d = {"alpha": self.alpha, "sigma": self.sigma.j}
        d.update(self.extra)
        return d


@dataclass(frozen=True)
class FamilyLabel:
    """Outcome of :func:`classify3`.

    ``witness`` keys by family: I ``mu``; II/III ``mu, lam, degree``;
    IV ``omega, mu`` (and the normalised ``eta = mu/omega``); V none.
    """

    family: str
    witness: dict
    profile: InvariantProfile
    min_distance: int | None

    def reconstruct(self, tower: FieldTower) -> Subspace:
        w = self.witness
        if self.family == "I":
            return subfield_subspace(tower, 3, w["mu"])
        if self.family in ("II", "III"):
            mu, lam = w["mu"], w["lam"]
            return span(tower, [mu, tower.mul(mu, lam), tower.mul(mu, tower.mul(lam, lam))])
        if self.family == "IV":
            return subfield_subspace(tower, 2, w["omega"]) + span(tower, [w["mu"]])
        raise PreconditionError("family V carries no structural witness")

    def verify(self, S: Subspace) -> bool:
        if self.family == "V":
            return self.profile.sidon and self.witness == {}
        return self.reconstruct(S.tower) == S

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "witness": dict(sorted(self.witness.items())),
            "profile": self.profile.to_dict(),
            "min_distance": self.min_distance,
        }


# -- witness searches --------------------------------------------------------


def find_poly_basis(S: Subspace) -> tuple[int, int] | None:
    """(mu, lam) with S = mu <1, lam, lam^2>, or None.

    Tries every projective point s of S as mu, and every point lam of
    T = s^-1 S outside F_q; scaling lam by F_q^* leaves <1, lam, lam^2> fixed,
    so points suffice.
    """
    _require_dim3(S)
    t = S.tower
    for s in S.points:
        T = S.scale(t.inv(s))
        for lam in T.points:
            if t.is_fq(lam):
                continue
            lam2 = t.mul(lam, lam)
            if not T.contains(lam2):
                continue
            if span(t, [1, lam, lam2]) == T:
                return s, lam
    return None


def find_famIV_witness(S: Subspace) -> tuple[int, int] | None:
    """(omega, mu) with S = omega F_{q^2} + <mu>, or None."""
    _require_dim3(S)
    t = S.tower
    if t.n % 2:
        return None
    X = largest_fqt_subspace(S, 2)
    if X.k != 2:
        return None
    omega = X.basis[0]
    mu = next(b for b in S.basis if not X.contains(b))
    return omega, mu


def classify3(S: Subspace) -> FamilyLabel:
    """Assign S to exactly one of the families I-V, with witnesses."""
    _require_dim3(S)
    t = S.tower
    prof = profile(S)
    # None when S = F_{q^n} (n = 3): a one-member orbit has no distance
    dist = min_distance(S) if S.tower.n > 3 else None
    if prof.linearity_degree == 3:
        return FamilyLabel("I", {"mu": S.basis[0]}, prof, dist)
    if prof.dim_square == 6:
        return FamilyLabel("V", {}, prof, dist)
    if prof.dim_square == 4 or (prof.dim_square == 5 and (t.n % 2 or prof.w[2] == 0)):
        found = find_poly_basis(S)
        if found is None:
            raise AssertionError(f"no polynomial basis for a dim S^2 = {prof.dim_square} subspace {S!r}")
        mu, lam = found
        deg = t.degree_over_base(lam)
        fam = "II" if prof.dim_square == 4 else "III"
        return FamilyLabel(fam, {"mu": mu, "lam": lam, "degree": deg}, prof, dist)
    if prof.dim_square == 5:
        found = find_famIV_witness(S)
        if found is None:
            raise AssertionError(f"no F_(q^2)-line witness for {S!r}")
        omega, mu = found
        eta = t.div(mu, omega)
        return FamilyLabel("IV", {"omega": omega, "mu": mu, "eta": eta}, prof, dist)
    raise AssertionError(f"dim S^2 = {prof.dim_square} is impossible for k = 3")


# -- semilinear equivalence --------------------------------------------------


def equivalent(S1: Subspace, S2: Subspace) -> EquivWitness | None:
    """A witness (alpha, sigma) with S1 = alpha * S2^sigma, or None.

    Compares canonical orbit representatives of S1 and of S2^sigma for each
    of the h*n automorphisms.
    """
    S1.tower.check_same(S2.tower)
    if S1.k != S2.k:
        return None
    if S1.k == 0:
        return EquivWitness(1, FieldAut(0, S1.tower.m))
    t = S1.tower
    C1, b1 = canonical_with_scalar(S1)
    for sigma in t.automorphisms():
        C2, b2 = canonical_with_scalar(S2.aut_image(sigma))
        if C1 == C2:
            # b1 S1 = b2 S2^sigma
            return EquivWitness(t.div(b2, b1), sigma)
    return None


def class_key(S: Subspace) -> Subspace:
    """Smallest canonical orbit rep among the S^sigma; equal iff equivalent."""
    t = S.tower
    return min(canonical_with_scalar(S.aut_image(s))[0] for s in t.automorphisms())


def _poly_witness(S: Subspace, given) -> tuple[int, int]:
    found = given if given is not None else find_poly_basis(S)
    if found is None:
        raise PreconditionError("subspace has no polynomial basis <1, lam, lam^2>")
    if S.tower.degree_over_base(found[1]) <= 4:
        raise PreconditionError("the fractional-linear criterion needs deg(lam) > 4")
    return found


def equivalent_poly_fast(S1: Subspace, S2: Subspace, basis1=None, basis2=None) -> EquivWitness | None:
    """Equivalence of S_i = mu_i <1, lam_i, lam_i^2> with deg(lam_i) > 4.

    Normalised forms are equivalent iff lam2^sigma = t(lam1)/s(lam1) for F_q-affine
    t, s; then s(lam1)^2 * <1, lam2, lam2^2>^sigma = <1, lam1, lam1^2>.
    """
    S1.tower.check_same(S2.tower)
    _require_dim3(S1)
    _require_dim3(S2)
    t = S1.tower
    mu1, lam1 = _poly_witness(S1, basis1)
    mu2, lam2 = _poly_witness(S2, basis2)
    line = span(t, [1, lam1])
    fq = t.fq
    for sigma in t.automorphisms():
        L = t.frobenius(lam2, sigma)
        for b0, b1 in itertools.product(fq, repeat=2):
            if b0 == 0 and b1 == 0:
                continue
            den = t.add(b0, t.mul(b1, lam1))
            if not line.contains(t.mul(L, den)):
                continue
            xi = t.mul(den, den)
            # S1 = mu1 * xi * (mu2^sigma)^-1 * S2^sigma
            alpha = t.div(t.mul(mu1, xi), t.frobenius(mu2, sigma))
            return EquivWitness(alpha, sigma, {"xi": xi, "beta0": b0, "beta1": b1})
    return None


def _famIV_witness(S: Subspace, given) -> tuple[int, int]:
    found = given if given is not None else find_famIV_witness(S)
    if found is None:
        raise PreconditionError("subspace is not of the form omega F_(q^2) + <mu>")
    return found


def equivalent_famIV_fast(S1: Subspace, S2: Subspace, wit1=None, wit2=None) -> EquivWitness | None:
    """Equivalence of S_i = omega_i F_{q^2} + <mu_i>.

    With eta_i = mu_i / omega_i, the normalised forms satisfy
    N1 = xi N2^sigma iff xi in F_{q^2} and eta1 = a + xi b eta2^sigma for some
    a in F_{q^2}, b in F_q^*.
    """
    S1.tower.check_same(S2.tower)
    _require_dim3(S1)
    _require_dim3(S2)
    t = S1.tower
    om1, mu1 = _famIV_witness(S1, wit1)
    om2, mu2 = _famIV_witness(S2, wit2)
    eta1, eta2 = t.div(mu1, om1), t.div(mu2, om2)
    fq2 = t.subfield_elements(2)
    for sigma in t.automorphisms():
        e2s = t.frobenius(eta2, sigma)
        for xi in fq2:
            if xi == 0:
                continue
            for b in t.fq_nonzero:
                a = t.sub(eta1, t.mul(xi, t.mul(b, e2s)))
                if t.in_subfield(a, 2):
                    alpha = t.div(t.mul(om1, xi), t.frobenius(om2, sigma))
                    return EquivWitness(alpha, sigma, {"xi": xi, "a": a, "b": b})
    return None
