"""Integral-closure membership ``h in closure(J^m)`` with re-checkable certificates.

Certificate kinds:

* ``power``: ``h^s`` lies in ``(J^m)^s``, so ``X^s - h^s`` is an integral equation.
* ``reduction``: ``J^m (J^m, h)^N == (J^m, h)^(N+1)``, so ``J^m`` is a reduction
  of ``(J^m, h)``.
* ``newton``: for monomial data, convex weights placing every exponent of ``h``
  in the Newton polyhedron of ``J^m``.
* ``via``: ``h`` is integral over ``J'^m`` and every generator of ``J'`` is
  integral over ``J``; then ``closure(J'^m)`` lies in ``closure(J^m)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .ideal import Ideal, ideal_equal, ideal_member, ideal_power, ideal_product, ideal_sum
from .monomial import MonomialIdeal, hull_combination
from .ring import Poly

MEMBER = "Member"
NONMEMBER = "NonMemberCertified"
UNDECIDED = "UndecidedAtCap"

DEFAULT_MAX_S = 8
DEFAULT_MAX_N = 6

_caps = {"s": DEFAULT_MAX_S, "N": DEFAULT_MAX_N}


def set_closure_caps(max_s: int | None = None, max_N: int | None = None) -> None:
    """Change the search caps used when a call does not pass its own."""
    if max_s is not None:
        if max_s < 1:
            raise PreconditionError("power cap must be >= 1")
        _caps["s"] = max_s
    if max_N is not None:
        if max_N < 0:
            raise PreconditionError("reduction cap must be >= 0")
        _caps["N"] = max_N


def closure_caps() -> tuple:
    return _caps["s"], _caps["N"]


@dataclass
class ClosureVerdict:
    status: str
    certificate: dict | None = None
    h: Poly | None = None
    m: int = 1
    bounds: dict = field(default_factory=dict)

    @property
    def is_member(self) -> bool:
        return self.status == MEMBER

    def to_json(self) -> dict:
        out = {"status": self.status, "m": self.m}
        if self.h is not None:
            out["h"] = str(self.h)
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.bounds:
            out["bounds"] = self.bounds
        return out


def _prep(h, J: Ideal, m: int) -> Poly:
    if m < 1:
        raise PreconditionError("m must be >= 1")
    if isinstance(h, str):
        return J.ring(h)
    return J.ring.coerce(h)


def power_certificate(h, J: Ideal, m: int, s: int) -> ClosureVerdict:
    h = _prep(h, J, m)
    if s < 1:
        raise PreconditionError("s must be >= 1")
    if ideal_member(h ** s, ideal_power(J, m * s)):
        return ClosureVerdict(MEMBER, {"kind": "power", "s": s}, h, m)
    return ClosureVerdict(UNDECIDED, None, h, m, {"s": s})


def reduction_member(h, J: Ideal, m: int, cap: int | None = None) -> ClosureVerdict:
    h = _prep(h, J, m)
    if cap is None:
        cap = _caps["N"]
    if cap < 0:
        raise PreconditionError("cap must be >= 0")
    I = ideal_power(J, m)
    K = ideal_sum(I, Ideal(J.ring, [h]))
    KN = None  # K^N, with K^0 = (1)
    for N in range(cap + 1):
        lhs = I if KN is None else ideal_product(I, KN)
        KN1 = K if KN is None else ideal_product(KN, K)
        if ideal_equal(lhs, KN1):
            return ClosureVerdict(MEMBER, {"kind": "reduction", "N": N}, h, m)
        KN = KN1
    return ClosureVerdict(UNDECIDED, None, h, m, {"N": cap})


def _monomial_regime(h: Poly, J: Ideal) -> bool:
    return not J.ring.relations and J.is_monomial() and not h.is_zero()


def newton_verdict(h, J: Ideal, m: int) -> ClosureVerdict:
    """Exact decision for monomial ``J`` in a polynomial ring.

    The closure of a monomial ideal is monomial, so ``h`` is a member iff each
    of its terms is.
    """
    h = _prep(h, J, m)
    if not _monomial_regime(h, J):
        raise PreconditionError("Newton verdicts need a monomial ideal in a polynomial ring")
    I = MonomialIdeal.from_ideal(J).power(m)
    pts = I.sorted_exponents()
    weights = []
    for mono in sorted(h.terms, key=J.ring.hkey):
        e = mono[1:]
        lam = hull_combination(e, pts)
        if lam is None:
            return ClosureVerdict(NONMEMBER, {"kind": "newton", "exponent": list(e),
                                              "points": [list(p) for p in pts]}, h, m)
        weights.append({"exponent": list(e), "weights": [str(x) for x in lam]})
    return ClosureVerdict(MEMBER, {"kind": "newton", "points": [list(p) for p in pts], "terms": weights}, h, m)


def certify_member(h, J: Ideal, m: int, max_s: int | None = None, max_N: int | None = None,
                   use_reduction: bool = True) -> ClosureVerdict | None:
    """Search for a certificate; ``None`` if nothing succeeds within the caps."""
    h = _prep(h, J, m)
    max_s = _caps["s"] if max_s is None else max_s
    max_N = _caps["N"] if max_N is None else max_N
    if h.is_zero():
        return ClosureVerdict(MEMBER, {"kind": "power", "s": 1}, h, m)
    for s in range(1, max_s + 1):
        v = power_certificate(h, J, m, s)
        if v.is_member:
            return v
    if use_reduction:
        v = reduction_member(h, J, m, max_N)
        if v.is_member:
            return v
    if _monomial_regime(h, J):
        v = newton_verdict(h, J, m)
        if v.is_member:
            return v
    return None


def closure_verdict(h, J: Ideal, m: int, max_s: int | None = None, max_N: int | None = None) -> ClosureVerdict:
    """Member with certificate, NonMemberCertified (monomial regime), or UndecidedAtCap."""
    h = _prep(h, J, m)
    if _monomial_regime(h, J):
        v = newton_verdict(h, J, m)
        if not v.is_member:
            return v
    v = certify_member(h, J, m, max_s, max_N)
    if v is not None:
        return v
    return ClosureVerdict(UNDECIDED, None, h, m, {"s": _caps["s"] if max_s is None else max_s,
                                                  "N": _caps["N"] if max_N is None else max_N})


def certify_via(h, J: Ideal, m: int, J_prime: Ideal, max_s: int | None = None,
                max_N: int | None = None) -> ClosureVerdict:
    """Certificate through an intermediate ideal ``J'`` inside ``closure(J)``."""
    h = _prep(h, J, m)
    max_s = _caps["s"] if max_s is None else max_s
    max_N = _caps["N"] if max_N is None else max_N
    inner = certify_member(h, J_prime, m, max_s, max_N)
    if inner is None:
        return ClosureVerdict(UNDECIDED, None, h, m, {"s": max_s, "N": max_N, "stage": "inner"})
    links = []
    for g in J_prime.gens:
        v = certify_member(g, J, 1, max_s, max_N)
        if v is None:
            return ClosureVerdict(UNDECIDED, None, h, m, {"s": max_s, "N": max_N, "stage": "link"})
        links.append({"g": str(g), "certificate": v.certificate})
    cert = {"kind": "via", "ideal": [str(g) for g in J_prime.gens], "inner": inner.certificate, "links": links}
    return ClosureVerdict(MEMBER, cert, h, m)


def recheck(h, J: Ideal, m: int, cert) -> bool:
    """Re-verify a certificate from scratch."""
    if isinstance(cert, ClosureVerdict):
        cert = cert.certificate
    if not cert:
        return False
    h = _prep(h, J, m)
    kind = cert.get("kind")
    if kind == "power":
        return ideal_member(h ** int(cert["s"]), ideal_power(J, m * int(cert["s"])))
    if kind == "reduction":
        N = int(cert["N"])
        I = ideal_power(J, m)
        K = ideal_sum(I, Ideal(J.ring, [h]))
        lhs = I if N == 0 else ideal_product(I, ideal_power(K, N))
        return ideal_equal(lhs, ideal_power(K, N + 1))
    if kind == "newton":
        if not _monomial_regime(h, J):
            return False
        pts = MonomialIdeal.from_ideal(J).power(m).sorted_exponents()
        terms = {tuple(t["exponent"]): [Fraction(x) for x in t["weights"]] for t in cert.get("terms", [])}
        for mono in h.terms:
            e = mono[1:]
            lam = terms.get(tuple(e))
            if lam is None or len(lam) != len(pts) or any(x < 0 for x in lam) or sum(lam) != 1:
                return False
            for i in range(len(e)):
                if sum(l * p[i] for l, p in zip(lam, pts)) > e[i]:
                    return False
        return True
    if kind == "via":
        Jp = Ideal(J.ring, [J.ring(g) for g in cert["ideal"]])
        if not recheck(h, Jp, m, cert["inner"]):
            return False
        if len(cert["links"]) != len(Jp.gens):
            return False
        return all(recheck(J.ring(l["g"]), J, 1, l["certificate"]) for l in cert["links"])
    return False


class ClosureGenerators(list):
    """List of ``(generator, ClosureVerdict)``; rejected candidates in ``rejected``."""

    def __init__(self, items=(), rejected=()):
        super().__init__(items)
        self.rejected = list(rejected)


def closure_generators(J: Ideal, m: int, candidates: Sequence | None = None,
                       max_s: int | None = None, max_N: int | None = None) -> ClosureGenerators:
    """Certified generators of ``closure(J^m)``.

    Without candidates ``J`` must be monomial: generators come from the
    Newton polyhedron and each gets a certificate (power first, then the
    reduction criterion, then the Newton weights).  With candidates, each one
    is validated and the ones without a certificate are rejected.
    """
    from .monomial import monomial_integral_closure
    if candidates is None:
        if J.ring.relations or not J.is_monomial():
            raise PreconditionError("closure generators need a monomial ideal or a candidate list")
        gens = monomial_integral_closure(MonomialIdeal.from_ideal(J), m).to_ideal().gens
        out = []
        for g in gens:
            v = certify_member(g, J, m, max_s, max_N, use_reduction=False)
            if v is None:
                v = certify_member(g, J, m, max_s, max_N)
            out.append((g, v))
        return ClosureGenerators(out)
    accepted, rejected = [], []
    for c in candidates:
        g = J.ring(c) if isinstance(c, str) else J.ring.coerce(c)
        v = certify_member(g, J, m, max_s, max_N)
        if v is None:
            rejected.append(g)
        else:
            accepted.append((g, v))
    return ClosureGenerators(accepted, rejected)
