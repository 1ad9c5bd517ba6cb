"""Buchberger's algorithm on raw term dictionaries.

Polynomials here are ``dict`` objects mapping module monomials
``(pos, e1, ..., en)`` to nonzero coefficients.  Ideals simply use position
0 throughout.  Coefficients are ``mpq`` when ``p == 0`` and residues mod
``p`` otherwise.

The engine implements the normal (sugar) selection strategy together with
the Gebauer-Moeller installation of Buchberger's two criteria.  The product
criterion is only applied to ideals; it is false for modules.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Iterable

from gmpy2 import mpq

from .errors import ResourceCapExceeded


@dataclass(frozen=True)
class Caps:
    max_pairs: int = 200_000
    max_degree: int = 40


_caps_stack = [Caps()]


def current_caps() -> Caps:
    return _caps_stack[-1]


def set_default_caps(caps: Caps) -> None:
    _caps_stack[0] = caps


class caps_scope:
    """Temporarily replace the active resource caps."""

    def __init__(self, caps: Caps):
        self.caps = caps

    def __enter__(self):
        _caps_stack.append(self.caps)
        return self.caps

    def __exit__(self, *exc):
        _caps_stack.pop()
        return False


def mdeg(m) -> int:
    return sum(m) - m[0]


def divides(a, b) -> bool:
    if a[0] != b[0]:
        return False
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class Element:
    __slots__ = ("lm", "tail", "sugar", "deg")

    def __init__(self, lm, tail, sugar):
        self.lm = lm
        self.tail = tail
        self.sugar = sugar
        self.deg = mdeg(lm)

    def as_dict(self, one):
        d = {self.lm: one}
        d.update(self.tail)
        return d


class Reducer:
    """Normal forms modulo a fixed list of monic elements."""

    def __init__(self, hkey: Callable, p: int):
        self.hkey = hkey
        self.p = p
        self._hk = {}

    def hk(self, m):
        k = self._hk.get(m)
        if k is None:
            k = self._hk[m] = self.hkey(m)
        return k

    def reduce(self, f: dict, elems: list, stop_pos: int | None = None, top_only: bool = False) -> dict:
        """Return the remainder of ``f`` (consumed) modulo ``elems``.

        With ``stop_pos`` set, terms at positions >= stop_pos are left
        untouched.  With ``top_only`` the first irreducible leading term
        ends the reduction.
        """
        p = self.p
        hk = self.hk
        heap = [(hk(m), m) for m in f]
        heapq.heapify(heap)
        rem = {}
        push = heapq.heappush
        pop = heapq.heappop
        while heap:
            m = pop(heap)[1]
            c = f.pop(m, None)
            if c is None:
                continue
            if stop_pos is not None and m[0] >= stop_pos:
                rem[m] = c
                rem.update(f)
                return rem
            pos = m[0]
            for g in elems:
                glm = g.lm
                if glm[0] != pos:
                    continue
                for x, y in zip(glm, m):
                    if x > y:
                        break
                else:
                    q = tuple([y - x for x, y in zip(glm, m)])
                    if p:
                        for tm, tc in g.tail:
                            nm = tuple([a + b for a, b in zip(tm, q)])
                            old = f.get(nm)
                            if old is None:
                                f[nm] = (-c * tc) % p
                                push(heap, (hk(nm), nm))
                            else:
                                v = (old - c * tc) % p
                                if v:
                                    f[nm] = v
                                else:
                                    del f[nm]
                    else:
                        for tm, tc in g.tail:
                            nm = tuple([a + b for a, b in zip(tm, q)])
                            old = f.get(nm)
                            if old is None:
                                f[nm] = -c * tc
                                push(heap, (hk(nm), nm))
                            else:
                                v = old - c * tc
                                if v:
                                    f[nm] = v
                                else:
                                    del f[nm]
                    break
            else:
                rem[m] = c
                if top_only:
                    rem.update(f)
                    return rem
        return rem

    def make_element(self, f: dict, sugar: int) -> Element:
        lm = min(f, key=self.hk)
        lc = f[lm]
        if self.p:
            inv = pow(lc, -1, self.p)
            tail = [(m, c * inv % self.p) for m, c in f.items() if m != lm]
        else:
            tail = [(m, c / lc) for m, c in f.items() if m != lm]
        tail.sort(key=lambda t: self.hk(t[0]))
        return Element(lm, tail, sugar)


def poly_degree(f: dict) -> int:
    return max(mdeg(m) for m in f)


def _neg(k):
    return tuple([-x for x in k])


def buchberger(
    gens: Iterable[dict],
    hkey: Callable,
    p: int,
    *,
    known_gb: Iterable[dict] = (),
    module: bool = False,
    degree_limit: int | None = None,
    caps: Caps | None = None,
    cap_positions: int | None = None,
    discard_from: int | None = None,
) -> list[dict]:
    """Reduced Groebner basis of ``gens`` (plus ``known_gb``).

    ``known_gb`` must already be a Groebner basis of what it generates; no
    pairs are formed among its members.  With ``degree_limit`` (homogeneous
    input only) pairs of sugar above the limit are dropped, yielding a basis
    that is correct up to that degree.  ``cap_positions`` restricts the
    degree cap to module positions below it (cofactor-tracking positions
    are exempt).  ``discard_from`` drops every element whose leading
    position is at least that value; under a position-over-term order such
    elements vanish in all lower positions and never feed back into them.

    Returns monic dicts sorted by leading monomial, largest first.
    """
    caps = caps or current_caps()
    red = Reducer(hkey, p)
    one = mpq(1) if p == 0 else 1
    elems: list[Element] = []
    basis: list[int] = []
    pairs = {}
    heap = []
    counter = 0
    use_product = not module

    def reducers():
        return [elems[i] for i in basis]

    def update(h: int):
        nonlocal counter, basis
        hlm = elems[h].lm
        cands = [g for g in basis if elems[g].lm[0] == hlm[0]]
        lcms = {g: lcm(elems[g].lm, hlm) for g in cands}
        kept = []
        rest = list(cands)
        while rest:
            g1 = rest.pop()
            L1 = lcms[g1]
            if use_product and coprime(elems[g1].lm[1:], hlm[1:]):
                kept.append(g1)
                continue
            if any(divides(lcms[g2], L1) for g2 in rest) or any(divides(lcms[g2], L1) for g2 in kept):
                continue
            kept.append(g1)
        new = [g for g in kept if not (use_product and coprime(elems[g].lm[1:], hlm[1:]))]
        for key in list(pairs):
            i, j, L = pairs[key]
            if divides(hlm, L) and lcm(elems[i].lm, hlm) != L and lcm(elems[j].lm, hlm) != L:
                del pairs[key]
        for g in new:
            L = lcms[g]
            dL = mdeg(L)
            sugar = max(elems[g].sugar + dL - elems[g].deg, elems[h].sugar + dL - elems[h].deg)
            counter += 1
            pairs[counter] = (g, h, L)
            heapq.heappush(heap, (sugar, _neg(red.hk(L)), counter))
        basis = [g for g in basis if not divides(hlm, elems[g].lm)] + [h]

    for f in known_gb:
        elems.append(red.make_element(dict(f), poly_degree(f)))
        basis.append(len(elems) - 1)

    for f in sorted((dict(g) for g in gens if g), key=lambda d: (poly_degree(d), red.hk(min(d, key=red.hk)))):
        sugar = poly_degree(f)
        r = red.reduce(f, reducers())
        if not r or (discard_from is not None and min(r, key=red.hk)[0] >= discard_from):
            continue
        elems.append(red.make_element(r, sugar))
        update(len(elems) - 1)

    processed = 0
    while heap:
        sugar, _, key = heapq.heappop(heap)
        entry = pairs.pop(key, None)
        if entry is None:
            continue
        if degree_limit is not None and sugar > degree_limit:
            continue
        processed += 1
        if processed > caps.max_pairs:
            raise ResourceCapExceeded("S-pairs", caps.max_pairs)
        i, j, L = entry
        s = _spoly(elems[i], elems[j], L, p)
        if not s:
            continue
        r = red.reduce(s, reducers())
        if not r or (discard_from is not None and min(r, key=red.hk)[0] >= discard_from):
            continue
        capped = r if cap_positions is None else {m: c for m, c in r.items() if m[0] < cap_positions}
        if capped and poly_degree(capped) > caps.max_degree:
            raise ResourceCapExceeded("degree", caps.max_degree)
        elems.append(red.make_element(r, sugar))
        update(len(elems) - 1)

    return _interreduce([elems[i] for i in basis], red, one)


def _spoly(a: Element, b: Element, L, p) -> dict:
    qa = tuple([x - y for x, y in zip(L, a.lm)])
    qb = tuple([x - y for x, y in zip(L, b.lm)])
    f = {}
    for m, c in a.tail:
        f[tuple([x + y for x, y in zip(m, qa)])] = c
    for m, c in b.tail:
        nm = tuple([x + y for x, y in zip(m, qb)])
        v = f.get(nm)
        if v is None:
            f[nm] = (-c) % p if p else -c
        else:
            v = (v - c) % p if p else v - c
            if v:
                f[nm] = v
            else:
                del f[nm]
    return f


def _interreduce(elems: list[Element], red: Reducer, one) -> list[dict]:
    elems = sorted(elems, key=lambda e: red.hk(e.lm))
    out = []
    for idx, e in enumerate(elems):
        others = elems[:idx] + elems[idx + 1:]
        tail = red.reduce(dict(e.tail), others)
        d = {e.lm: one}
        d.update(tail)
        out.append(d)
    return out


def normal_form(f: dict, gb: list[dict], hkey: Callable, p: int, stop_pos: int | None = None) -> dict:
    red = Reducer(hkey, p)
    elems = [red.make_element(g, 0) for g in gb]
    return red.reduce(dict(f), elems, stop_pos=stop_pos)


def leading_monomial(f: dict, hkey: Callable):
    return min(f, key=hkey)
