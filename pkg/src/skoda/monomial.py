"""Monomial ideals and their integral closures via Newton polyhedra.

A monomial ``x^e`` lies in the integral closure of a monomial ideal ``I``
exactly when ``e`` lies in ``conv(exponents of I) + R_{>=0}^n``.  Membership
is decided by exact rational linear programming.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import PreconditionError, SkodaError
from .ideal import Ideal
from .lp import feasible_point
from .ring import RingPresentation


def _dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(a, b))


def minimalize(exps: Iterable[tuple]) -> frozenset:
    kept = []
    for e in sorted(set(exps), key=lambda t: (sum(t), t)):
        if not any(_dominates(e, k) for k in kept):
            kept.append(e)
    return frozenset(kept)


class MonomialIdeal:
    """A monomial ideal, stored by the antichain of its minimal exponents."""

    __slots__ = ("ring", "exponents")

    def __init__(self, ring: RingPresentation, exponents: Iterable[Sequence[int]]):
        if ring.relations:
            raise PreconditionError("monomial ideals live in polynomial rings")
        exps = [tuple(int(x) for x in e) for e in exponents]
        if any(len(e) != ring.nvars for e in exps):
            raise SkodaError("exponent vector length does not match the ring")
        self.ring = ring
        self.exponents = minimalize(exps)

    @classmethod
    def from_ideal(cls, I: Ideal) -> "MonomialIdeal":
        if not I.is_monomial():
            raise PreconditionError("ideal is not generated by monomials")
        return cls(I.ring, [next(iter(g.terms))[1:] for g in I.gens])

    def to_ideal(self) -> Ideal:
        return Ideal(self.ring, [self.ring.monomial(e) for e in self.sorted_exponents()])

    def sorted_exponents(self) -> list:
        hk = self.ring.order.hkey
        return sorted(self.exponents, key=hk)

    def contains(self, e: Sequence[int]) -> bool:
        return any(_dominates(e, g) for g in self.exponents)

    def power(self, m: int) -> "MonomialIdeal":
        if m < 1:
            raise PreconditionError("power needs m >= 1")
        cur = {tuple([0] * self.ring.nvars)}
        for _ in range(m):
            cur = minimalize(tuple(a + b for a, b in zip(c, g)) for c in cur for g in self.exponents)
        return MonomialIdeal(self.ring, cur)

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.ring == other.ring and self.exponents == other.exponents

    def __hash__(self):
        return hash((self.ring, self.exponents))

    def __repr__(self):
        return f"MonomialIdeal({[str(self.ring.monomial(e)) for e in self.sorted_exponents()]})"


def hull_combination(e: Sequence[int], points: Sequence[Sequence[int]]) -> list | None:
    """Convex weights ``lam`` with ``sum lam_i * points_i <= e``, or None."""
    pts = list(points)
    d = len(e)
    if not pts:
        return None
    for p in pts:
        if _dominates(e, p):
            return [Fraction(int(q is p)) for q in pts]
    # variables: one weight per point, one slack per coordinate
    A = []
    for i in range(d):
        A.append([p[i] for p in pts] + [int(k == i) for k in range(d)])
    A.append([1] * len(pts) + [0] * d)
    b = list(e) + [1]
    x = feasible_point(A, b)
    if x is None:
        return None
    return x[:len(pts)]


def newton_hull_member(e: Sequence[int], I: MonomialIdeal) -> bool:
    if len(e) != I.ring.nvars:
        raise SkodaError("exponent vector length does not match the ring")
    return hull_combination(e, sorted(I.exponents)) is not None


def _nullspace_vector(rows: list, d: int) -> list | None:
    """A nonzero rational vector orthogonal to ``rows`` if the kernel is a line."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(d):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(d) if c not in pivots]
    if len(free) != 1:
        return None
    v = [Fraction(0)] * d
    v[free[0]] = Fraction(1)
    for i, c in enumerate(pivots):
        v[c] = -mat[i][free[0]]
    return v


def newton_inequalities(I: MonomialIdeal) -> list:
    """Valid inequalities ``a . e >= b`` (``a >= 0``) cutting out the Newton polyhedron.

    Every facet is spanned by ``d`` affinely independent generators drawn from
    the vertices and the coordinate rays, so enumerating those subsets finds all
    facets (plus possibly some redundant valid inequalities).
    """
    d = I.ring.nvars
    pts = sorted(I.exponents)
    rays = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    found = set()
    for p0 in pts:
        others = [("p", q) for q in pts if q > p0] + [("r", r) for r in rays]
        for combo in combinations(others, d - 1):
            dirs = [[a - b for a, b in zip(q, p0)] if kind == "p" else list(q) for kind, q in combo]
            a = _nullspace_vector(dirs, d) if d > 1 else [Fraction(1)]
            if a is None:
                continue
            if any(x < 0 for x in a):
                a = [-x for x in a]
            if any(x < 0 for x in a):
                continue
            b = sum(x * y for x, y in zip(a, p0))
            if all(sum(x * y for x, y in zip(a, q)) >= b for q in pts):
                den = 1
                for x in a + [b]:
                    den = den * x.denominator // _gcd(den, x.denominator)
                found.add((tuple(int(x * den) for x in a), int(b * den)))
    return sorted(found)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def monomial_integral_closure(I: MonomialIdeal, m: int = 1) -> MonomialIdeal:
    """Minimal generators of the integral closure of ``I^m``.

    Uses the facet description of the Newton polyhedron of ``I`` scaled by
    ``m``; candidates range over the box below the componentwise maximum of
    the vertices of ``m * NP(I)``.
    """
    if not I.exponents:
        raise PreconditionError("integral closure of the zero ideal")
    if m < 1:
        raise PreconditionError("power needs m >= 1")
    ineqs = newton_inequalities(I)
    top = [m * max(v[i] for v in I.exponents) for i in range(I.ring.nvars)]
    members = []
    for e in product(*(range(t + 1) for t in top)):
        if any(_dominates(e, k) for k in members):
            continue
        if all(sum(x * y for x, y in zip(a, e)) >= m * b for a, b in ineqs):
            members.append(e)
    return MonomialIdeal(I.ring, members)


def monomial_integral_closure_lp(I: MonomialIdeal, m: int = 1) -> MonomialIdeal:
    """Same as :func:`monomial_integral_closure`, deciding each point by LP."""
    if not I.exponents:
        raise PreconditionError("integral closure of the zero ideal")
    P = I.power(m)
    verts = sorted(P.exponents)
    top = [max(v[i] for v in verts) for i in range(I.ring.nvars)]
    members = []
    for e in product(*(range(t + 1) for t in top)):
        if any(_dominates(e, k) for k in members):
            continue
        if P.contains(e) or hull_combination(e, verts) is not None:
            members.append(e)
    return MonomialIdeal(I.ring, members)
