"""Monomial orders.

Every order exposes a *heap key*: a tuple such that ``hkey(a) < hkey(b)``
exactly when monomial ``a`` is LARGER than ``b``.  Sorting by it lists terms
in descending order and ``min(..., key=hkey)`` picks a leading monomial,
which is what both printing and the Groebner engine want.

Module monomials carry their position in slot 0 (``(pos, e1, ..., en)``);
``module_hkey`` compares positions first (position-over-term, smaller
position index is larger).
"""

from __future__ import annotations

from typing import Sequence

from .errors import SkodaError


class MonomialOrder:
    __slots__ = ("kind", "groups", "nvars", "hkey", "module_hkey")

    def __init__(self, kind: str, nvars: int, groups: Sequence[Sequence[int]] | None = None):
        if kind not in ("grevlex", "lex", "block"):
            raise SkodaError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.nvars = nvars
        if kind == "block":
            if not groups:
                raise SkodaError("block order needs variable groups")
            flat = [i for g in groups for i in g]
            if sorted(flat) != list(range(nvars)):
                raise SkodaError("block groups must partition the variables")
            self.groups = tuple(tuple(g) for g in groups)
        else:
            self.groups = None
        self.hkey, self.module_hkey = self._build()

    def _build(self):
        if self.kind == "grevlex":
            def hkey(e):
                return (-sum(e),) + e[::-1]

            def module_hkey(m):
                return (m[0], -sum(m) + m[0]) + m[:0:-1]
        elif self.kind == "lex":
            def hkey(e):
                return tuple([-x for x in e])

            def module_hkey(m):
                return (m[0],) + tuple([-x for x in m[1:]])
        else:
            rgroups = [tuple(reversed(g)) for g in self.groups]

            def hkey(e):
                out = []
                for g in rgroups:
                    out.append(-sum([e[i] for i in g]))
                    out.extend([e[i] for i in g])
                return tuple(out)

            def module_hkey(m):
                out = [m[0]]
                for g in rgroups:
                    out.append(-sum([m[i + 1] for i in g]))
                    out.extend([m[i + 1] for i in g])
                return tuple(out)
        return hkey, module_hkey

    def greater(self, a, b) -> bool:
        return self.hkey(tuple(a)) < self.hkey(tuple(b))

    def descriptor(self, var_names: Sequence[str]):
        if self.kind == "block":
            return {"block": [[var_names[i] for i in g] for g in self.groups]}
        return self.kind

    @classmethod
    def from_descriptor(cls, desc, var_names: Sequence[str]) -> "MonomialOrder":
        n = len(var_names)
        if desc is None:
            return cls("grevlex", n)
        if isinstance(desc, str):
            return cls(desc, n)
        if isinstance(desc, dict) and "block" in desc:
            index = {v: i for i, v in enumerate(var_names)}
            try:
                groups = [[index[v] for v in g] for g in desc["block"]]
            except KeyError as exc:
                raise SkodaError(f"block order names unknown variable {exc}") from None
            return cls("block", n, groups)
        raise SkodaError(f"bad order descriptor {desc!r}")

    def _ident(self):
        return (self.kind, self.nvars, self.groups)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder(block, {self.groups})"
        return f"MonomialOrder({self.kind})"
