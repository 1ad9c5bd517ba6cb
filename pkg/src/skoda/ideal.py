"""Ideals in presented rings and the Groebner-based operations on them.

Quotient rings are never given a Groebner theory of their own: every
computation happens in the ambient polynomial ring with the relation
generators adjoined.
"""

from __future__ import annotations

from collections import OrderedDict
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from . import gbcore
from .errors import PreconditionError, SkodaError
from .orders import MonomialOrder
from .ring import Poly, RingPresentation, d_add, d_mul

_GB_CACHE: "OrderedDict[tuple, tuple]" = OrderedDict()
_GB_CACHE_SIZE = 2048


def _cache_get(key):
    val = _GB_CACHE.get(key)
    if val is not None:
        _GB_CACHE.move_to_end(key)
    return val


def _cache_put(key, val):
    _GB_CACHE[key] = val
    if len(_GB_CACHE) > _GB_CACHE_SIZE:
        _GB_CACHE.popitem(last=False)


def clear_cache():
    _GB_CACHE.clear()


def _is_homogeneous(d: dict) -> bool:
    degs = {sum(m) for m in d}
    return len(degs) <= 1


def _minimal_monomials(mons: Iterable[tuple]) -> list:
    kept = []
    for m in sorted(set(mons), key=sum):
        if not any(all(a <= b for a, b in zip(k, m)) for k in kept):
            kept.append(m)
    return kept


class Ideal:
    """A finitely generated ideal of a :class:`RingPresentation`."""

    def __init__(self, ring: RingPresentation, gens: Iterable = ()):
        self.ring = ring
        out = []
        for g in gens:
            if isinstance(g, str):
                g = ring(g)
            elif not isinstance(g, Poly):
                g = ring.const(g)
            elif g.ring is not ring:
                g = ring.coerce(g)
            if g.terms:
                out.append(g)
        self.gens = tuple(out)
        self._gb = None
        self._trunc = {}

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens))})"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def _key(self):
        return (self.ring, tuple(sorted(tuple(sorted(g.terms.items(), key=lambda t: self.ring.hkey(t[0])))
                                        for g in self.gens)))

    def is_monomial(self) -> bool:
        return not self.ring.relations and all(len(g.terms) == 1 for g in self.gens)

    def is_homogeneous(self) -> bool:
        return all(_is_homogeneous(g.terms) for g in self.gens) and all(
            _is_homogeneous(r) for r in self.ring.relations)

    # Groebner bases

    def gb_dicts(self, degree_limit: int | None = None) -> list:
        if self._gb is not None:
            return self._gb
        if degree_limit is not None:
            for d, basis in self._trunc.items():
                if d >= degree_limit:
                    return basis
        key = self._key()
        cached = _cache_get((key, None))
        if cached is not None:
            self._gb = list(cached)
            return self._gb
        if degree_limit is not None:
            cached = _cache_get((key, degree_limit))
            if cached is not None:
                return list(cached)
        gens = [g.terms for g in self.gens]
        ring = self.ring
        if self.is_monomial():
            one = ring.field.one
            basis = [{m: one} for m in _minimal_monomials(m for g in gens for m in g)]
            basis.sort(key=lambda d: ring.hkey(next(iter(d))))
            degree_limit = None
        else:
            basis = gbcore.buchberger(gens, ring.hkey, ring.p, known_gb=ring.relations,
                                      degree_limit=degree_limit)
        if degree_limit is None:
            self._gb = basis
            _cache_put((key, None), tuple(basis))
        else:
            self._trunc[degree_limit] = basis
            _cache_put((key, degree_limit), tuple(basis))
        return basis

    def groebner_basis(self) -> list:
        amb = self.ring.ambient()
        return [Poly(amb, d, reduce=False) for d in self.gb_dicts()]

    def normal_form(self, h: Poly) -> Poly:
        h = self._coerce(h)
        basis = self._basis_for(h)
        nf = gbcore.normal_form(h.terms, basis, self.ring.hkey, self.ring.p)
        return Poly(self.ring, nf, reduce=False)

    def _basis_for(self, h: Poly) -> list:
        if self._gb is None and h.terms and _is_homogeneous(h.terms) and self.is_homogeneous() \
                and not self.is_monomial():
            return self.gb_dicts(degree_limit=h.degree())
        return self.gb_dicts()

    def _coerce(self, h) -> Poly:
        if isinstance(h, str):
            return self.ring(h)
        if not isinstance(h, Poly):
            return self.ring.const(h)
        if h.ring is not self.ring and h.ring != self.ring:
            raise SkodaError("element and ideal live in different rings")
        return h

    def contains(self, h) -> bool:
        h = self._coerce(h)
        if not h.terms:
            return True
        return self.normal_form(h).is_zero()

    __contains__ = contains

    def is_unit(self) -> bool:
        return self.contains(self.ring.one())

    # arithmetic

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __pow__(self, k: int) -> "Ideal":
        return ideal_power(self, k)


# --- public operations ------------------------------------------------------------

def groebner_basis(I: Ideal) -> list:
    return I.groebner_basis()


def ideal_member(h, I: Ideal) -> bool:
    return I.contains(h)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise SkodaError("ideals live in different rings")
    return I.gb_dicts() == J.gb_dicts()


def ideal_subset(I: Ideal, J: Ideal) -> bool:
    return all(J.contains(g) for g in I.gens)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, list(I.gens) + list(J.gens))


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    p = I.ring.p
    seen = {}
    for a in I.gens:
        for b in J.gens:
            g = Poly(I.ring, d_mul(a.terms, b.terms, p))
            if g.terms:
                seen.setdefault(g, None)
    return Ideal(I.ring, list(seen))


def ideal_power(I: Ideal, k: int) -> Ideal:
    """All k-fold products of the generators, deduplicated in first-seen order."""
    if k < 1:
        raise PreconditionError("ideal_power needs k >= 1")
    gens = [g.terms for g in I.gens]
    ring = I.ring
    p = ring.p
    seen = {}
    one = {(0,) * (ring.nvars + 1): ring.field.one}
    for combo in combinations_with_replacement(range(len(gens)), k):
        t = one
        for i in combo:
            t = d_mul(t, gens[i], p)
        g = Poly(ring, t)
        if g.terms:
            seen.setdefault(g, None)
    return Ideal(ring, list(seen))


def power_products(gens: Sequence[Poly], k: int) -> list:
    """The k-fold products with their exponent multi-indices, before dedup."""
    out = []
    n = len(gens)
    for combo in combinations_with_replacement(range(n), k):
        t = gens[0].ring.one()
        for i in combo:
            t = t * gens[i]
        expo = tuple(combo.count(i) for i in range(n))
        out.append((expo, t))
    return out


# --- elimination and friends ------------------------------------------------------

def _restrict_order(order: MonomialOrder, keep_idx: Sequence[int]):
    if order.kind in ("grevlex", "lex"):
        return order.kind
    pos = {old: new for new, old in enumerate(keep_idx)}
    groups = [[pos[i] for i in g if i in pos] for g in order.groups]
    groups = [g for g in groups if g]
    if len(groups) == 1:
        return "grevlex"
    return MonomialOrder("block", len(keep_idx), groups)


def _remap(terms: dict, perm: Sequence[int], nnew: int) -> dict:
    """Send variable i of the source to slot perm[i] of a ring with nnew vars."""
    out = {}
    for m, c in terms.items():
        nm = [0] * (nnew + 1)
        nm[0] = m[0]
        for i, e in enumerate(m[1:]):
            if e:
                nm[perm[i] + 1] = e
        out[tuple(nm)] = c
    return out


def eliminate_dicts(ring: RingPresentation, gens: list, elim: Sequence[str]) -> list:
    """Elimination in ``ring``'s ambient: returns dicts over the kept variables.

    ``gens`` are term dicts over ``ring.vars``; ring relations are adjoined.
    """
    elim_idx = [ring.vars.index(v) for v in elim]
    keep_idx = [i for i in range(ring.nvars) if i not in elim_idx]
    new_order = elim_idx + keep_idx
    perm = [0] * ring.nvars
    for new, old in enumerate(new_order):
        perm[old] = new
    ne = len(elim_idx)
    order = MonomialOrder("block", ring.nvars, [list(range(ne)), list(range(ne, ring.nvars))])
    gens2 = [_remap(g, perm, ring.nvars) for g in list(gens) + list(ring.relations)]
    basis = gbcore.buchberger(gens2, order.module_hkey, ring.p)
    kept = []
    for d in basis:
        if all(not any(m[1:ne + 1]) for m in d):
            kept.append({(m[0],) + m[ne + 1:]: c for m, c in d.items()})
    return kept


def eliminate(I: Ideal, keep: Sequence[str]) -> Ideal:
    """``I`` intersected with the subring on ``keep``, as an ideal of that subring."""
    ring = I.ring
    for v in keep:
        if v not in ring.vars:
            raise SkodaError(f"unknown variable {v!r}")
    keep = [v for v in ring.vars if v in keep]
    elim = [v for v in ring.vars if v not in keep]
    keep_idx = [ring.vars.index(v) for v in keep]
    sub = RingPresentation(ring.field, keep, _restrict_order(ring.order, keep_idx))
    if not elim:
        return Ideal(sub, [Poly(sub, dict(g.terms)) for g in I.gens] +
                     [Poly(sub, dict(r)) for r in ring.relations])
    kept = eliminate_dicts(ring, [g.terms for g in I.gens], elim)
    return Ideal(sub, [Poly(sub, d) for d in kept])


def _fresh(ring: RingPresentation, stem: str) -> str:
    name = stem
    i = 0
    while name in ring.vars:
        i += 1
        name = f"{stem}{i}"
    return name


def _extend(ring: RingPresentation, extra: Sequence[str], first: bool = False) -> RingPresentation:
    vars = (list(extra) + list(ring.vars)) if first else (list(ring.vars) + list(extra))
    return RingPresentation(ring.field, vars, "grevlex")


def _lift(terms: dict, nextra: int, first: bool = False) -> dict:
    pad = (0,) * nextra
    if first:
        return {(m[0],) + pad + m[1:]: c for m, c in terms.items()}
    return {m + pad: c for m, c in terms.items()}


def saturate_dicts(ring: RingPresentation, gens: list, g: dict) -> list:
    """Generators (dicts over ``ring.vars``) of ``(gens + relations) : g^oo``."""
    w = _fresh(ring, "w_")
    big = _extend(ring, [w], first=True)
    wmon = (0, 1) + (0,) * ring.nvars
    one = (0,) * (ring.nvars + 2)
    wg = d_mul({wmon: ring.field.one}, _lift(g, 1, True), ring.p)
    wg = d_add(wg, {one: ring.field.one}, ring.p, -1)
    lifted = [_lift(f, 1, True) for f in list(gens) + list(ring.relations)] + [wg]
    return eliminate_dicts(big, lifted, [w])


def saturate(I: Ideal, g) -> Ideal:
    g = I._coerce(g)
    if g.is_zero():
        raise PreconditionError("cannot saturate by zero")
    ring = I.ring
    kept = saturate_dicts(ring, [f.terms for f in I.gens], g.terms)
    return Ideal(ring, [Poly(ring, d) for d in kept])


def intersect(I: Ideal, J: Ideal) -> Ideal:
    ring = I.ring
    t = _fresh(ring, "t_")
    big = _extend(ring, [t], first=True)
    tmon = {(0, 1) + (0,) * ring.nvars: ring.field.one}
    one = {(0,) * (ring.nvars + 2): ring.field.one}
    one_minus_t = d_add(one, tmon, ring.p, -1)
    gens = [d_mul(tmon, _lift(f.terms, 1, True), ring.p) for f in I.gens]
    gens += [d_mul(one_minus_t, _lift(f.terms, 1, True), ring.p) for f in J.gens]
    gens += [_lift(r, 1, True) for r in ring.relations]
    kept = eliminate_dicts(big, gens, [t])
    return Ideal(ring, [Poly(ring, d) for d in kept])


def exact_divide(f: dict, g: dict, ring: RingPresentation) -> dict:
    """Quotient of f by g in the ambient polynomial ring; raises if inexact."""
    red = gbcore.Reducer(ring.hkey, ring.p)
    ge = red.make_element(dict(g), 0)
    lc = g[ge.lm]
    inv = ring.field.inv(lc)
    f = dict(f)
    q = {}
    p = ring.p
    while f:
        lm = min(f, key=red.hk)
        if not gbcore.divides(ge.lm, lm):
            raise SkodaError("inexact division")
        mono = tuple([a - b for a, b in zip(lm, ge.lm)])
        c = f[lm] * inv
        if p:
            c %= p
        q[mono] = c
        f = d_add(f, d_mul({mono: c}, g, p), p, -1)
    return q


def quotient_by_element(I: Ideal, g: Poly) -> Ideal:
    """``(I : g)`` in I's ring."""
    ring = I.ring
    amb = ring.ambient()
    if g.is_zero():
        return Ideal(ring, [ring.one()])
    Iamb = Ideal(amb, [Poly(amb, dict(f.terms), reduce=False) for f in I.gens] +
                 [Poly(amb, dict(r), reduce=False) for r in ring.relations])
    G = Ideal(amb, [Poly(amb, dict(g.terms), reduce=False)])
    inter = intersect(Iamb, G)
    gens = [exact_divide(f.terms, g.terms, amb) for f in inter.gens]
    return Ideal(ring, [Poly(ring, d) for d in gens])


def colon(I: Ideal, J: Ideal) -> Ideal:
    ring = I.ring
    result = None
    for g in J.gens:
        Q = quotient_by_element(I, g)
        result = Q if result is None else intersect(result, Q)
    if result is None:
        return Ideal(ring, [ring.one()])
    return result
