"""Multivariate polynomials over finitely presented commutative rings.

A :class:`RingPresentation` is ``k[x1..xn]/Q`` with ``Q`` stored as its
reduced Groebner basis; every :class:`Poly` is kept in normal form modulo
``Q``, so equality is a comparison of term maps.

Internally a monomial is the tuple ``(0, e1, ..., en)``: the leading slot is
the module position used by the Groebner engine and is always 0 for ring
elements.
"""

from __future__ import annotations

import functools
from typing import Iterable, Mapping, Sequence

from . import gbcore
from .errors import SkodaError
from .field import Field, QQ
from .orders import MonomialOrder


# --- raw term-dict arithmetic -------------------------------------------------

def d_add(a: dict, b: dict, p: int, sign: int = 1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m)
        v = (c if sign == 1 else -c) if v is None else (v + c if sign == 1 else v - c)
        if p:
            v %= p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def d_mul(a: dict, b: dict, p: int) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple([x + y for x, y in zip(ma, mb)])
            v = get(m)
            out[m] = ca * cb if v is None else v + ca * cb
    if p:
        return {m: c % p for m, c in out.items() if c % p}
    return {m: c for m, c in out.items() if c}


def d_scale(a: dict, c, p: int) -> dict:
    if p:
        c %= p
        return {m: v * c % p for m, v in a.items()} if c else {}
    return {m: v * c for m, v in a.items()} if c else {}


def d_shift(a: dict, mono) -> dict:
    return {tuple([x + y for x, y in zip(m, mono)]): c for m, c in a.items()}


def d_degree(a: dict) -> int:
    return max((sum(m) - m[0] for m in a), default=-1)


# --- rings --------------------------------------------------------------------

class RingPresentation:
    """``field[vars] / relations`` with relations kept as a reduced GB."""

    def __init__(self, field: Field = QQ, vars: Sequence[str] = (), order="grevlex",
                 relations: Iterable = ()):
        self.field = field if isinstance(field, Field) else Field.from_descriptor(field)
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise SkodaError(f"duplicate variable names in {self.vars}")
        if not isinstance(order, MonomialOrder):
            order = MonomialOrder.from_descriptor(order, self.vars)
        self.order = order
        self.hkey = order.module_hkey
        rels = []
        amb = self if not relations else self._ambient_copy()
        for r in relations:
            if isinstance(r, str):
                from .parse import parse_raw
                rels.append(parse_raw(r, amb))
            elif isinstance(r, Poly):
                rels.append(dict(r.terms))
            else:
                rels.append(dict(r))
        rels = [r for r in rels if r]
        if rels:
            rels = gbcore.buchberger(rels, self.hkey, self.field.p)
        self.relations = tuple(rels)
        self.is_zero_ring = any(len(r) == 1 and self._is_one_mon(next(iter(r))) for r in rels)
        self._elems = None
        self._key = (self.field.p, self.vars, order,
                     tuple(tuple(sorted(r.items(), key=lambda t: self.hkey(t[0]))) for r in self.relations))
        self._hash = hash(self._key)

    def _ambient_copy(self):
        return RingPresentation(self.field, self.vars, self.order)

    @staticmethod
    def _is_one_mon(m) -> bool:
        return not any(m)

    # construction helpers

    @classmethod
    def polynomial_ring(cls, vars: Sequence[str], field: Field = QQ, order="grevlex") -> "RingPresentation":
        return cls(field, vars, order)

    @classmethod
    def from_descriptor(cls, desc: Mapping) -> "RingPresentation":
        return cls(Field.from_descriptor(desc.get("field", "Q")), desc["vars"],
                   desc.get("order", "grevlex"), desc.get("relations", ()))

    def descriptor(self) -> dict:
        amb = self.ambient()
        return {
            "field": self.field.descriptor(),
            "vars": list(self.vars),
            "order": self.order.descriptor(self.vars),
            "relations": [str(Poly(amb, r, reduce=False)) for r in self.relations],
        }

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def p(self) -> int:
        return self.field.p

    def ambient(self) -> "RingPresentation":
        if not self.relations:
            return self
        return _ambient(self.field, self.vars, self.order)

    def quotient(self, relation_gens: Iterable) -> "RingPresentation":
        """Return ``self / (relation_gens)``; relations of ``self`` are kept."""
        gens = [dict(g.terms) if isinstance(g, Poly) else g for g in relation_gens]
        return RingPresentation(self.field, self.vars, self.order, list(self.relations) + gens)

    def with_order(self, order) -> "RingPresentation":
        return RingPresentation(self.field, self.vars, order, self.relations)

    # elements

    def zero(self) -> "Poly":
        return Poly(self, {}, reduce=False)

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        if not c:
            return self.zero()
        return Poly(self, {(0,) * (self.nvars + 1): c})

    def var(self, name: str) -> "Poly":
        try:
            i = self.vars.index(name)
        except ValueError:
            raise SkodaError(f"no variable {name!r} in ring {self.vars}") from None
        m = [0] * (self.nvars + 1)
        m[i + 1] = 1
        return Poly(self, {tuple(m): self.field.one})

    def gens(self) -> list:
        return [self.var(v) for v in self.vars]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        if len(exps) != self.nvars:
            raise SkodaError("exponent vector length mismatch")
        return Poly(self, {(0,) + tuple(exps): self.field(coeff)})

    def from_exponents(self, terms: Mapping) -> "Poly":
        """Build from ``{exponent tuple: coefficient}``."""
        return Poly(self, {(0,) + tuple(e): self.field(c) for e, c in terms.items() if self.field(c)})

    def __call__(self, text) -> "Poly":
        if isinstance(text, Poly):
            return self.coerce(text)
        if isinstance(text, str):
            from .parse import parse_poly
            return parse_poly(text, self)
        return self.const(text)

    def coerce(self, f: "Poly") -> "Poly":
        """Map a polynomial over a ring on the same variables into this ring."""
        if f.ring is self:
            return f
        if f.ring.vars != self.vars or f.ring.field != self.field:
            raise SkodaError("cannot coerce between rings on different variables")
        return Poly(self, dict(f.terms))

    def _relation_elements(self):
        if self._elems is None:
            red = gbcore.Reducer(self.hkey, self.p)
            self._elems = (red, [red.make_element(r, 0) for r in self.relations])
        return self._elems

    def normal_form_dict(self, terms: dict) -> dict:
        if not self.relations or not terms:
            return terms
        red, elems = self._relation_elements()
        return red.reduce(dict(terms), elems)

    def __eq__(self, other):
        return isinstance(other, RingPresentation) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        base = f"{self.field!r}[{', '.join(self.vars)}]"
        if self.relations:
            return f"{base}/({len(self.relations)} relations)"
        return base


@functools.lru_cache(maxsize=256)
def _ambient(field, vars, order):
    return RingPresentation(field, vars, order)


def ring_quotient(ambient: RingPresentation, relation_gens: Iterable) -> RingPresentation:
    return ambient.quotient(relation_gens)


def make_ring(vars: Sequence[str] | str, relations: Iterable = (), field="Q", order="grevlex") -> RingPresentation:
    if isinstance(vars, str):
        vars = [v.strip() for v in vars.replace(",", " ").split()]
    if not isinstance(field, Field):
        field = Field.from_descriptor(field)
    return RingPresentation(field, vars, order, relations)


# --- polynomials --------------------------------------------------------------

class Poly:
    """An element of a :class:`RingPresentation`, kept in normal form."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingPresentation, terms: dict, reduce: bool = True):
        self.ring = ring
        self.terms = ring.normal_form_dict(terms) if reduce else terms
        self._hash = None

    # coercion

    def _other(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise SkodaError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    # arithmetic

    def __add__(self, other):
        o = self._other(other)
        return Poly(self.ring, d_add(self.terms, o.terms, self.ring.p), reduce=False)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return Poly(self.ring, d_add(self.terms, o.terms, self.ring.p, -1), reduce=False)

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {m: (-c) % p if p else -c for m, c in self.terms.items()}, reduce=False)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field(other)
            return Poly(self.ring, d_scale(self.terms, c, self.ring.p), reduce=False)
        o = self._other(other)
        return Poly(self.ring, d_mul(self.terms, o.terms, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise SkodaError("polynomial powers need a non-negative integer exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Poly":
        return self * c

    # comparison

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self):
        if not self.terms:
            return self.ring.field.zero
        if not self.is_constant():
            raise SkodaError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        return d_degree(self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def sorted_terms(self) -> list:
        hk = self.ring.hkey
        return sorted(self.terms.items(), key=lambda t: hk(t[0]))

    def leading_exponent(self) -> tuple:
        if not self.terms:
            raise SkodaError("zero polynomial has no leading term")
        return min(self.terms, key=self.ring.hkey)[1:]

    def leading_coefficient(self):
        return self.terms[min(self.terms, key=self.ring.hkey)]

    def exponent_dict(self) -> dict:
        return {m[1:]: c for m, c in self.terms.items()}

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self * self.ring.field.inv(self.leading_coefficient())

    def variables_used(self) -> set:
        used = set()
        for m in self.terms:
            for i, e in enumerate(m[1:]):
                if e:
                    used.add(self.ring.vars[i])
        return used

    # printing

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.vars
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m[1:]) if e)
            cs = str(c)
            if not mono:
                s = cs
            elif cs == "1":
                s = mono
            elif cs == "-1":
                s = "-" + mono
            else:
                s = f"{cs}*{mono}"
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def __repr__(self):
        return f"Poly({self})"


class RingMap:
    """A ring homomorphism given by the images of the source variables."""

    def __init__(self, source: RingPresentation, target: RingPresentation, images: Sequence[Poly]):
        if len(images) != source.nvars:
            raise SkodaError("ring map needs one image per source variable")
        self.source = source
        self.target = target
        self.images = [target.coerce(g) if isinstance(g, Poly) else target(g) for g in images]
        self._powers = [dict() for _ in images]

    def _power(self, i: int, e: int) -> dict:
        cache = self._powers[i]
        if e not in cache:
            cache[e] = (self.images[i] ** e).terms
        return cache[e]

    def __call__(self, f: Poly) -> Poly:
        p = self.target.p
        total = {}
        one_mon = (0,) * (self.target.nvars + 1)
        for m, c in f.terms.items():
            term = {one_mon: c}
            for i, e in enumerate(m[1:]):
                if e:
                    term = d_mul(term, self._power(i, e), p)
            total = d_add(total, term, p)
        return Poly(self.target, total)

    def __repr__(self):
        return f"RingMap({self.source!r} -> {self.target!r})"
