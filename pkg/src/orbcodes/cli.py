"""Command-line interface.

Exit status: 0 success, 2 invalid input, 3 operation outside its
hypotheses, 4 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from .census import DEFAULT_ENUMERATION_CAP, CensusReport, census
from .classify import (
    classify3,
    equivalent,
    equivalent_famIV_fast,
    equivalent_poly_fast,
)
from .errors import OrbcodesError, ValidationError
from .gf import FieldTower, build_tower, divisors
from .orbit import canonical_orbit_rep, min_distance_witness, orbit_size
from .subspace import Subspace, is_sidon, profile, span
from .vform import (
    QPoly,
    VKind,
    build_v,
    classify_v,
    cpsz_equivalent_subspaces,
    decompose,
    sidon_v,
)


@dataclass
class RunConfig:
    p: int
    h: int
    n: int
    command: str
    modulus: list[int] | None = None
    fmt: str = "json"
    jobs: int = 1
    cap: int = DEFAULT_ENUMERATION_CAP
    out: str | None = None
    inputs: dict = field(default_factory=dict)

    def tower(self) -> FieldTower:
        return build_tower(self.p, self.h, self.n, self.modulus)


# -- parsing -----------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    text = text.replace(",", " ").split()
    try:
        return [int(x) for x in text]
    except ValueError as e:
        raise ValidationError(f"expected integers, got {text!r}") from e


def parse_subspace(tower: FieldTower, basis: str | None, rows: str | None, what: str = "subspace") -> Subspace:
    """Generators as element codes (``"1,2,4"``) or F_p digit rows (``"1 0 0;0 1 0"``)."""
    if (basis is None) == (rows is None):
        raise ValidationError(f"give the {what} either as --basis codes or as --rows digit vectors")
    if basis is not None:
        gens = _int_list(basis)
    else:
        gens = []
        for r in rows.split(";"):
            ds = _int_list(r)
            if len(ds) != tower.m:
                raise ValidationError(f"digit row {ds} must have {tower.m} entries")
            if any(not 0 <= d < tower.p for d in ds):
                raise ValidationError(f"digits must lie in [0, {tower.p}): {ds}")
            gens.append(tower.from_digits(ds))
    for a in gens:
        tower.check(a)
    return span(tower, gens)


def _nonzero(S: Subspace):
    if S.k == 0:
        raise ValidationError("the zero subspace is not a valid input")


# -- commands ----------------------------------------------------------------


def cmd_field_info(cfg: RunConfig) -> dict:
    t = cfg.tower()
    return {
        "tower": t.spec(),
        "q": t.q,
        "order": t.order,
        "primitive_root": t.g,
        "subfields": {str(d): t.subfield_generator(d) for d in divisors(t.n)},
    }


def cmd_invariants(cfg: RunConfig) -> dict:
    t = cfg.tower()
    S = parse_subspace(t, cfg.inputs.get("basis"), cfg.inputs.get("rows"))
    _nonzero(S)
    out = {"subspace": S.serialize(), "k": S.k}
    out.update(profile(S).to_dict())
    out["linearity"] = out["linearity_degree"]
    out["size"] = orbit_size(S)
    out["canonical_rep"] = canonical_orbit_rep(S).serialize()
    if out["size"] > 1:
        d, alpha = min_distance_witness(S)
        if 2 * S.k - 2 * S.intersection_dim(S.scale(alpha)) != d or S.scale(alpha) == S:
            raise AssertionError("distance witness failed re-verification")
        out["min_distance"] = d
        out["distance_witness"] = alpha
    else:
        out["min_distance"] = None
    return out


def cmd_classify(cfg: RunConfig) -> dict:
    t = cfg.tower()
    S = parse_subspace(t, cfg.inputs.get("basis"), cfg.inputs.get("rows"))
    lab = classify3(S)
    if not lab.verify(S):
        raise AssertionError("family witness failed re-verification")
    out = lab.to_dict()
    out["subspace"] = S.serialize()
    out["verified"] = True
    return out


def cmd_equiv(cfg: RunConfig) -> dict:
    t = cfg.tower()
    S1 = parse_subspace(t, cfg.inputs.get("basis1"), cfg.inputs.get("rows1"), "first subspace")
    S2 = parse_subspace(t, cfg.inputs.get("basis2"), cfg.inputs.get("rows2"), "second subspace")
    method = cfg.inputs.get("method", "brute")
    fn = {
        "brute": equivalent,
        "poly": equivalent_poly_fast,
        "famIV": equivalent_famIV_fast,
        "cpsz": cpsz_equivalent_subspaces,
    }[method]
    w = fn(S1, S2)
    out = {"method": method, "s1": S1.serialize(), "s2": S2.serialize(), "equivalent": w is not None}
    if w is not None:
        if not w.verify(S1, S2):
            raise AssertionError("equivalence witness failed re-verification")
        out["witness"] = w.to_dict()
        out["verified"] = True
    return out


def _vform_report(t: FieldTower, V, kind_hint: VKind | None) -> dict:
    S = V.subspace
    lab = classify3(S)
    if not lab.verify(S):
        raise AssertionError("family witness failed re-verification")
    out = {
        "vform": V.serialize(),
        "subspace": S.serialize(),
        "family": lab.family,
        "sidon": is_sidon(S),
        "min_distance": lab.min_distance,
        "size": orbit_size(S),
        "kind": classify_v(S).value,
    }
    if kind_hint is not None:
        out["sidon_criterion"] = sidon_v(t, kind_hint, V.gamma)
    return out


def cmd_construct_v(cfg: RunConfig) -> dict:
    t = cfg.tower()
    f_text = cfg.inputs.get("f", "xq")
    kind = None
    if f_text in ("xq", "trace", "tr"):
        kind = VKind.XQ if f_text == "xq" else VKind.TRACE
        f = QPoly.xq(t) if kind is VKind.XQ else QPoly.trace(t)
    else:
        coeffs = _int_list(f_text)
        if len(coeffs) != 3:
            raise ValidationError("f takes three coefficients a0,a1,a2")
        for a in coeffs:
            t.check(a)
        f = QPoly(t, tuple(coeffs))
    gamma = cfg.inputs.get("gamma")
    if gamma is None:
        raise ValidationError("construct-v needs --gamma")
    V = build_v(f, t.check(gamma))
    return _vform_report(t, V, kind)


def cmd_decompose_v(cfg: RunConfig) -> dict:
    t = cfg.tower()
    S = parse_subspace(t, cfg.inputs.get("basis"), cfg.inputs.get("rows"))
    dec = decompose(S)
    V = dec.vform()
    if V.subspace != S.scale(t.inv(dec.rho)):
        raise AssertionError("decomposition failed re-verification")
    out = dec.to_dict()
    out["subspace"] = S.serialize()
    out["kind"] = classify_v(S, dec).value
    out["verified"] = True
    return out


def cmd_census(cfg: RunConfig):
    return census(cfg.tower(), cap=cfg.cap, jobs=cfg.jobs)


COMMANDS = {
    "field-info": cmd_field_info,
    "invariants": cmd_invariants,
    "classify": cmd_classify,
    "equiv": cmd_equiv,
    "construct-v": cmd_construct_v,
    "decompose-v": cmd_decompose_v,
    "census": cmd_census,
}


# -- output ------------------------------------------------------------------


def _flat_csv(obj: dict) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["key", "value"])
    for k in sorted(obj):
        v = obj[k]
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            v = json.dumps(v, sort_keys=True)
        wr.writerow([k, v])
    return buf.getvalue()


def render(result, fmt: str) -> str:
    if isinstance(result, CensusReport):
        if fmt == "csv":
            return result.to_csv()
        result = result.to_dict()
    if fmt == "csv":
        return _flat_csv(result)
    return json.dumps(result, sort_keys=True, indent=2) + "\n"


# -- argparse ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="characteristic")
    common.add_argument("--h", type=int, default=1, help="q = p^h")
    common.add_argument("--n", type=int, required=True, help="degree of the top field over F_q")
    common.add_argument("--modulus", help="primitive polynomial c_0,...,c_{hn} over F_p")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)
    common.add_argument("--out", help="write output here instead of stdout")

    def sub_in(sp, suffix=""):
        sp.add_argument(f"--basis{suffix}", help="generators as element codes, e.g. 1,2,4")
        sp.add_argument(f"--rows{suffix}", help="generators as F_p digit rows separated by ';'")

    parser = argparse.ArgumentParser(prog="orbcodes", description="three-dimensional one-orbit cyclic subspace codes")
    subs = parser.add_subparsers(dest="command", required=True)
    subs.add_parser("field-info", parents=[common])
    for name in ("invariants", "classify", "decompose-v"):
        sub_in(subs.add_parser(name, parents=[common]))
    eq = subs.add_parser("equiv", parents=[common])
    sub_in(eq, "1")
    sub_in(eq, "2")
    eq.add_argument("--method", choices=("brute", "poly", "famIV", "cpsz"), default="brute")
    cv = subs.add_parser("construct-v", parents=[common])
    cv.add_argument("--f", default="xq", help="xq, trace, or coefficients a0,a1,a2 in F_(q^3)")
    cv.add_argument("--gamma", type=int, help="element code outside F_(q^3)")
    subs.add_parser("census", parents=[common])
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    modulus = _int_list(ns.modulus) if ns.modulus else None
    if ns.jobs < 1:
        raise ValidationError("--jobs must be positive")
    if ns.cap < 1:
        raise ValidationError("--cap must be positive")
    skip = {"p", "h", "n", "modulus", "format", "jobs", "cap", "out", "command"}
    inputs = {k: v for k, v in vars(ns).items() if k not in skip and v is not None}
    return RunConfig(
        p=ns.p, h=ns.h, n=ns.n, command=ns.command, modulus=modulus,
        fmt=ns.format, jobs=ns.jobs, cap=ns.cap, out=ns.out, inputs=inputs,
    )


def run(cfg: RunConfig) -> str:
    return render(COMMANDS[cfg.command](cfg), cfg.fmt)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        text = run(cfg)
    except OrbcodesError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_status
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
