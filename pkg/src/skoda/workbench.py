"""Containment checks, vanishing witnesses, and the elliptic-cone counterexample."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from .blowup import BlowupModel, CechComplex, build_blowup
from .bs import l_complex
from .closure import (ClosureVerdict, certify_member, certify_via, closure_generators, recheck)
from .complexes import TotalComplexSystem, Witness
from .errors import CertificateError, PreconditionError
from .ideal import Ideal, eliminate, ideal_member, ideal_power
from .modules import ModuleMatrix, module_solve
from .ring import Poly, RingPresentation, make_ring

HOLDS = "HOLDS"
FAILS = "FAILS"


@dataclass
class BsReport:
    ring: dict
    J: list
    n: int
    k: int
    closure_gens: list
    verdicts: list
    overall: str
    failing: list
    witnesses: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    timing: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "instance": {"ring": self.ring, "J": self.J, "n": self.n, "k": self.k},
            "closure_gens": self.closure_gens,
            "verdicts": self.verdicts,
            "overall": self.overall,
            "failing": self.failing,
        }
        if self.witnesses:
            out["witnesses"] = self.witnesses
        if self.checks:
            out["checks"] = self.checks
        if timing:
            out["timing_seconds"] = round(self.timing, 3)
        return out


def _as_poly(ring: RingPresentation, g) -> Poly:
    return ring(g) if isinstance(g, str) else ring.coerce(g)


def parse_hint(hint) -> dict | None:
    """Certificate hints: ``"power:3"``, ``"reduction:5"``, ``"newton"``, a dict, or None."""
    if hint is None or isinstance(hint, dict):
        return hint
    kind, _, arg = str(hint).partition(":")
    kind = kind.strip().lower()
    if kind == "power":
        return {"kind": "power", "s": int(arg)}
    if kind == "reduction":
        return {"kind": "reduction", "N": int(arg)}
    if kind in ("newton", "search", "auto", ""):
        return None
    raise PreconditionError(f"unknown certificate hint {hint!r}")


def certify_generators(J: Ideal, m: int, closure_gens: Sequence | None) -> list:
    """``[(g, ClosureVerdict)]`` for the closure generators; raises if any fails."""
    if closure_gens is None:
        gens = list(closure_generators(J, m))
        for g, v in gens:
            if v is None:
                raise CertificateError(f"closure generator {g} has no certificate within the caps")
        return gens
    out = []
    for item in closure_gens:
        if isinstance(item, tuple):
            expr, hint = item
        elif isinstance(item, dict):
            expr, hint = item["expr"], item.get("certificate")
        else:
            expr, hint = item, None
        g = _as_poly(J.ring, expr)
        if isinstance(hint, dict) and hint.get("kind") == "via_ideal":
            v = certify_via(g, J, m, Ideal(J.ring, [J.ring(x) for x in hint["ideal"]]))
            if not v.is_member:
                raise CertificateError(f"closure generator {g} could not be certified through {hint['ideal']}")
        else:
            cert = parse_hint(hint)
            if cert is not None:
                if not recheck(g, J, m, cert):
                    raise CertificateError(f"certificate {cert} for {g} does not verify")
                v = ClosureVerdict("Member", cert, g, m)
            else:
                v = certify_member(g, J, m)
                if v is None:
                    raise CertificateError(f"closure generator {g} has no certificate within the caps")
        out.append((g, v))
    return out


def bs_check(J: Ideal, k: int, closure_gens: Sequence | None = None, n: int | None = None) -> BsReport:
    """Is every certified generator of closure(J^(n+k-1)) in J^k?

    ``n`` defaults to the number of generators of ``J``; a larger value
    treats ``J`` as n-generated (padding with repeated generators).
    """
    t0 = time.perf_counter()
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if n is None:
        n = len(J.gens)
    elif n < len(J.gens):
        raise PreconditionError(f"J has {len(J.gens)} generators, more than n = {n}")
    N = n + k - 1
    gens = certify_generators(J, N, closure_gens)
    Jk = ideal_power(J, k)
    verdicts, failing = [], []
    for g, v in gens:
        inside = ideal_member(g, Jk)
        verdicts.append({"g": str(g), "in_Jk": inside})
        if not inside:
            failing.append(str(g))
    return BsReport(
        ring=J.ring.descriptor(), J=[str(g) for g in J.gens], n=n, k=k,
        closure_gens=[{"expr": str(g), "certificate": v.certificate} for g, v in gens],
        verdicts=verdicts, overall=FAILS if failing else HOLDS, failing=failing,
        timing=time.perf_counter() - t0)


# --- vanishing witnesses --------------------------------------------------

@dataclass
class MainTheoremResult:
    status: str  # WITNESS | FALSIFICATION
    witness: Witness | None
    model: BlowupModel
    certificate: dict
    failure: dict | None = None

    @property
    def ok(self) -> bool:
        return self.status == "WITNESS"

    def to_json(self) -> dict:
        out = {"status": self.status, "certificate": self.certificate,
               "charts": [c.ring.descriptor() for c in self.model.charts]}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.failure is not None:
            out["failure"] = self.failure
        return out


def theorem_model(h: Poly, f: Sequence[Poly], k: int, certificate: dict | None = None) -> BlowupModel:
    """Blowup of ``J^N + (h)`` by the ``f_i`` charts, ``N = n + k - 1``.

    ``h`` joins the center only when it is certified in closure(J^N); the
    blowup of that center is then dominated by the blowup of closure(J^N) and
    ``h / f_i^N`` is a chart coordinate.
    """
    ring = f[0].ring
    n = len(f)
    N = n + k - 1
    J = Ideal(ring, f)
    center = list(ideal_power(J, N).gens)
    certs: list = [None] * len(center)
    if certificate is None:
        v = certify_member(h, J, N)
        certificate = v.certificate if v is not None else None
    if certificate is not None and not h.is_zero():
        center.append(h)
        certs.append(certificate)
    return build_blowup(ring, center, f, N, certificates=certs)


def main_theorem_verify(h, f: Sequence, k: int, certificate: dict | None = None,
                        model: BlowupModel | None = None) -> MainTheoremResult:
    """Construct a witness that ``h`` dies in H_0(L^k(f) (x) RGamma(Y, O_Y)).

    A missing witness for a certified ``h`` is reported as a falsification.
    """
    f = list(f)
    ring = f[0].ring
    h = _as_poly(ring, h)
    f = [_as_poly(ring, g) for g in f]
    n = len(f)
    N = n + k - 1
    J = Ideal(ring, f)
    if certificate is None:
        v = certify_member(h, J, N)
        if v is None:
            raise PreconditionError(f"{h} is not certified in the closure of J^{N}")
        certificate = v.certificate
    elif not recheck(h, J, N, certificate):
        raise CertificateError("supplied certificate does not verify")
    if model is None:
        model = theorem_model(h, f, k, certificate)
    L = l_complex(f, k)
    system = TotalComplexSystem(L, CechComplex(model), f)
    w = system.lift(h)
    if w is None:
        return MainTheoremResult("FALSIFICATION", None, model, certificate, system.last_failure)
    return MainTheoremResult("WITNESS", w, model, certificate)


def chart_level_check(h, f: Sequence, k: int, model: BlowupModel | None = None) -> list:
    """Per chart ``j``: is ``h`` in ``J^k Gamma(Y_j)``?"""
    f = list(f)
    ring = f[0].ring
    h = _as_poly(ring, h)
    f = [_as_poly(ring, g) for g in f]
    if model is None:
        model = theorem_model(h, f, k)
    Jk = ideal_power(Ideal(ring, f), k).gens
    out = []
    for patch in model.charts:
        M = ModuleMatrix(patch.ring, [[patch.base_map(g) for g in Jk]], 1, len(Jk))
        out.append(module_solve(M, [patch.base_map(h)]) is not None)
    return out


def bir_preclosure_member(h, J: Ideal, k: int, model: BlowupModel, detail: bool = False,
                          use_base: bool = True):
    """Does the class of ``h`` vanish in H_0(R/J^k (x)^L RGamma(Y, O_Y)) for this ``Y``?

    ``True`` answers are certified: either ``h`` lies in ``J^k`` over the base,
    or a lifting witness through the L-complex of the generators of ``J``
    (which maps to R/J^k) exists on ``model``.  ``False`` is relative to the
    model and to the method.  ``use_base=False`` skips the base-ring shortcut
    so that the witness route is exercised on its own.
    """
    ring = J.ring
    h = _as_poly(ring, h)
    Jk = ideal_power(J, k)
    info: dict = {"h": str(h)}
    if use_base and ideal_member(h, Jk):
        info["route"] = "base"
        return (True, info) if detail else True
    same_gens = (model.has_ratios and len(model.chart_index_gens) == len(J.gens)
                 and all(a == b for a, b in zip(model.chart_index_gens, J.gens)))
    if same_gens:
        system = TotalComplexSystem(l_complex(list(J.gens), k), CechComplex(model), list(J.gens))
        w = system.lift(h)
        if w is None:
            w = system.lift(h, twisted=False)
        if w is not None:
            info["route"] = "witness"
            info["witness"] = w.to_json()
            return (True, info) if detail else True
        info["failure"] = system.last_failure
    info["route"] = "none"
    return (False, info) if detail else False


# --- the elliptic cone counterexample -----------------------------------------

ELLIPTIC_VARS = ["a", "b", "c", "d", "e", "g"]


def derive_elliptic_relations() -> list:
    """Kernel of Q[a..g] -> Q[x,y,z,u,v]/(x^3+y^3+z^3), a..g = xu,xv,yu,yv,zu,zv."""
    big = make_ring(["x", "y", "z", "u", "v"] + ELLIPTIC_VARS)
    gens = [big(s) for s in ("a - x*u", "b - x*v", "c - y*u", "d - y*v", "e - z*u", "g - z*v",
                             "x^3 + y^3 + z^3")]
    I = eliminate(Ideal(big, gens), ELLIPTIC_VARS)
    return sorted((str(g) for g in I.gens), key=lambda s: (len(s), s))


def elliptic_fixture() -> dict:
    with resources.files("skoda.data").joinpath("elliptic.json").open() as fh:
        return json.load(fh)


def elliptic_ring(rederive: bool = False) -> RingPresentation:
    rels = derive_elliptic_relations() if rederive else elliptic_fixture()["relations"]
    return make_ring(ELLIPTIC_VARS, rels)


def counterexample_suite(rederive: bool = True) -> BsReport:
    """Reproduce the failure of closure(J^2) in J on the cone over E x P^1."""
    t0 = time.perf_counter()
    fixture = elliptic_fixture()
    checks: dict = {}
    if rederive:
        derived = derive_elliptic_relations()
        R = make_ring(ELLIPTIC_VARS, derived)
        checks["fixture_matches_derivation"] = R == make_ring(ELLIPTIC_VARS, fixture["relations"])
    else:
        R = make_ring(ELLIPTIC_VARS, fixture["relations"])
    a, b, c, d, e, g = R.gens()
    checks["segre_relation_ad_minus_bc"] = (a * d - b * c).is_zero()
    h = R(fixture["h"])
    J = Ideal(R, [R(s) for s in fixture["J"]])
    Jp = Ideal(R, [R(s) for s in fixture["J_prime"]])
    checks["h_cubed_in_Jprime6"] = ideal_member(h ** 3, ideal_power(Jp, 6))
    checks["h_not_in_J"] = not ideal_member(h, J)
    via = certify_via(h, J, 2, Jp)
    checks["h_in_closure_J2_via_Jprime"] = via.is_member
    report = bs_check(J, 1, [(fixture["h"], {"kind": "via_ideal", "ideal": fixture["J_prime"]})])
    report.checks = checks
    report.timing = time.perf_counter() - t0
    return report
