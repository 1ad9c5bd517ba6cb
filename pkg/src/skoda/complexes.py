"""Free complexes, homology checks, and the lifting system for H_0 classes.

Differentials are stored as ``ModuleMatrix`` objects with ``d(i)`` mapping
degree ``i`` to degree ``i - 1``.  The total complex of an L-complex with a
Cech complex is never materialised as one big matrix; instead the class of
``h`` is killed stage by stage (see :class:`TotalComplexSystem`).
"""

from __future__ import annotations

import random
from typing import Sequence

from .errors import ResourceCapExceeded, SkodaError
from .modules import ModuleMatrix, image_contains, module_solve, syzygies
from .ring import Poly, RingPresentation


class FreeComplex:
    """``0 -> F_n -> ... -> F_1 -> F_0`` over a presented ring."""

    def __init__(self, ring: RingPresentation, ranks: Sequence[int], differentials: Sequence[ModuleMatrix],
                 labels: Sequence[Sequence] | None = None, meta: dict | None = None):
        self.ring = ring
        self.ranks = list(ranks)
        self.differentials = list(differentials)
        if len(self.differentials) != len(self.ranks) - 1:
            raise SkodaError("need one differential per positive degree")
        for i, D in enumerate(self.differentials, start=1):
            if D.rows != self.ranks[i - 1] or D.cols != self.ranks[i]:
                raise SkodaError(f"differential d_{i} has shape {D.rows}x{D.cols}, "
                                 f"expected {self.ranks[i - 1]}x{self.ranks[i]}")
        self.labels = [list(l) for l in labels] if labels is not None else None
        self.meta = dict(meta or {})

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def d(self, i: int) -> ModuleMatrix:
        if 1 <= i <= self.length:
            return self.differentials[i - 1]
        rows = self.ranks[i - 1] if 0 <= i - 1 <= self.length else 0
        cols = self.ranks[i] if 0 <= i <= self.length else 0
        return ModuleMatrix.zeros(self.ring, rows, cols)

    def mapped(self, fn, ring: RingPresentation) -> "FreeComplex":
        """Apply a ring map entrywise (base change along ``fn``)."""
        return FreeComplex(ring, self.ranks, [D.mapped(fn, ring) for D in self.differentials],
                           self.labels, self.meta)

    def to_json(self) -> dict:
        out = {
            "ring": self.ring.descriptor(),
            "ranks": self.ranks,
            "differentials": [D.to_strings() for D in self.differentials],
        }
        if self.labels is not None:
            out["labels"] = [[_label_json(l) for l in row] for row in self.labels]
        if self.meta:
            out["meta"] = self.meta
        return out

    def __repr__(self):
        return f"FreeComplex(ranks={self.ranks})"


def _label_json(label):
    if isinstance(label, tuple):
        return [_label_json(x) for x in label]
    return label


def check_d_squared(C: FreeComplex) -> bool:
    for i in range(1, C.length):
        if not (C.d(i) @ C.d(i + 1)).is_zero():
            return False
    return True


def homology_is_zero_at(C: FreeComplex, i: int) -> bool:
    """Is ``ker d_i`` contained in ``im d_{i+1}``?"""
    if i < 1:
        raise SkodaError("homology checks are for degrees >= 1")
    if i > C.length:
        return True
    nxt = C.d(i + 1)
    for col in syzygies(C.d(i)).columns():
        if all(e.is_zero() for e in col):
            continue
        if nxt.cols == 0 or not image_contains(nxt, col):
            return False
    return True


# --- the lifting system ---------------------------------------------------

class Witness:
    """A chain ``z_0, ..., z_{n-1}`` with ``z_p`` in ``L_{p+1} (x) C^p``.

    ``stages[p]`` maps each ``(p+1)``-subset of charts to a vector over the
    ring of that patch.
    """

    def __init__(self, h: Poly, stages: list, twisted: list):
        self.h = h
        self.stages = stages
        self.twisted = twisted

    def to_json(self) -> dict:
        out = []
        for p, stage in enumerate(self.stages):
            for gamma in sorted(stage):
                out.append({
                    "homological_degree": p + 1,
                    "cech_degree": p,
                    "index_set": list(gamma),
                    "vector": [str(e) for e in stage[gamma]],
                })
        return {"h": str(self.h), "stages": out, "twisted_stages": self.twisted}


class TotalComplexSystem:
    """The complex ``L (x) C`` with total differential ``d + (-1)^i delta``.

    ``cech`` must provide ``index_sets(p)``, ``ring(gamma)``,
    ``base_map(gamma)`` and ``restriction(small, big)``.  When ``f`` (the
    generators defining ``L``) is given, the lifting first looks for
    solutions of the twisted form ``z_{p,gamma} = f_a^(n-p-1) * y`` with
    ``a = min(gamma)``; these realise the exact chart complexes.
    """

    def __init__(self, L: FreeComplex, cech, f: Sequence[Poly] | None = None):
        self.L = L
        self.cech = cech
        self.f = list(f) if f is not None else None
        self.n = L.length
        self._mats: dict = {}
        self.last_failure: dict | None = None

    def matrix(self, i: int, gamma: tuple) -> ModuleMatrix:
        key = (i, gamma)
        if key not in self._mats:
            phi = self.cech.base_map(gamma)
            self._mats[key] = self.L.d(i).mapped(phi, self.cech.ring(gamma))
        return self._mats[key]

    def delta(self, p: int, cochain: dict, big: tuple) -> list:
        """Component at ``big`` of the Cech differential of a ``p``-cochain."""
        ring = self.cech.ring(big)
        acc = None
        for q in range(len(big)):
            small = big[:q] + big[q + 1:]
            vec = cochain.get(small)
            if vec is None:
                continue
            res = self.cech.restriction(small, big)
            img = [res(e) for e in vec]
            if q % 2:
                img = [-e for e in img]
            acc = img if acc is None else [a + b for a, b in zip(acc, img)]
        if acc is None:
            return None
        return [ring.coerce(e) if e.ring is not ring else e for e in acc]

    def _solve(self, p: int, gamma: tuple, rhs: list, twist: bool):
        """``(z, twisted)``; ``z`` is None when the stage has no solution."""
        M = self.matrix(p + 1, gamma)
        if twist and self.f is not None:
            e = self.n - p - 1
            fa = self.cech.base_map(gamma)(self.f[gamma[0]]) ** e
            try:
                y = module_solve(M.scaled(fa), rhs)
            except ResourceCapExceeded:
                # the twisted form is a preference, not a requirement
                return module_solve(M, rhs), False
            if y is not None:
                return [fa * c for c in y], True
            if p == 0:
                # stage 0 twisted is the membership h in f_a^(n-1) J^k Gamma; no retry
                return None, True
        return module_solve(M, rhs), False

    def lift(self, h: Poly, twisted: bool = True) -> Witness | None:
        self.last_failure = None
        stages: list = []
        used_twist: list = []
        for p in range(self.n):
            stage = {}
            tw_flags = []
            for gamma in self.cech.index_sets(p):
                if p == 0:
                    rhs = [self.cech.base_map(gamma)(h)]
                else:
                    rhs = self.delta(p - 1, stages[p - 1], gamma)
                    if rhs is None:
                        raise SkodaError("incomplete cochain in lifting")
                    if p % 2 == 0:
                        rhs = [-e for e in rhs]
                z, tw = self._solve(p, gamma, rhs, twisted)
                if z is None:
                    self.last_failure = {"stage": p, "index_set": list(gamma)}
                    return None
                stage[gamma] = z
                tw_flags.append(tw)
            stages.append(stage)
            used_twist.append(all(tw_flags))
        w = Witness(h, stages, used_twist)
        if not self.verify(w):
            raise SkodaError("internal error: witness failed verification")
        return w

    def verify(self, w: Witness) -> bool:
        """Re-check every lifting equation by substitution."""
        if len(w.stages) != self.n:
            return False
        for p in range(self.n):
            for gamma in self.cech.index_sets(p):
                z = w.stages[p].get(gamma)
                if z is None:
                    return False
                lhs = self.matrix(p + 1, gamma).apply(z)
                if p == 0:
                    rhs = [self.cech.base_map(gamma)(w.h)]
                else:
                    rhs = self.delta(p - 1, w.stages[p - 1], gamma)
                    if rhs is None:
                        return False
                    if p % 2 == 0:
                        rhs = [-e for e in rhs]
                if lhs != rhs:
                    return False
        return True

    # total differential on explicit elements, used for sign checks
    def total_d(self, i: int, p: int, x: dict) -> dict:
        """``D`` applied to ``x`` in ``L_i (x) C^p``; keys are ``(i, p, gamma)``."""
        out: dict = {}
        if i >= 1:
            for gamma, vec in x.items():
                out[(i - 1, p, gamma)] = self.matrix(i, gamma).apply(vec)
        sign = -1 if i % 2 else 1
        if p + 1 <= self.cech.max_degree:
            for big in self.cech.index_sets(p + 1):
                comp = self.delta(p, x, big)
                if comp is not None:
                    out[(i, p + 1, big)] = [-e for e in comp] if sign < 0 else comp
        return out

    def check_d_squared_random(self, trials: int = 5, seed: int = 0, max_deg: int = 2) -> bool:
        rng = random.Random(seed)
        for _ in range(trials):
            i = rng.randint(0, self.n)
            p = rng.randint(0, self.cech.max_degree)
            x = {}
            for gamma in self.cech.index_sets(p):
                ring = self.cech.ring(gamma)
                x[gamma] = [_random_poly(ring, rng, max_deg) for _ in range(self.L.ranks[i])]
            first = self.total_d(i, p, x)
            acc: dict = {}
            for (i2, p2, gamma), vec in first.items():
                for key, val in self.total_d(i2, p2, {gamma: vec}).items():
                    prev = acc.get(key)
                    acc[key] = val if prev is None else [a + b for a, b in zip(prev, val)]
            if any(not e.is_zero() for vec in acc.values() for e in vec):
                return False
        return True


def _random_poly(ring: RingPresentation, rng: random.Random, max_deg: int) -> Poly:
    terms = {}
    for _ in range(rng.randint(0, 3)):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(ring.nvars)] += 1
        terms[tuple(e)] = rng.randint(-3, 3)
    return ring.from_exponents(terms)


def class_vanishes_in_H0(system: TotalComplexSystem, h: Poly, twisted: bool = True) -> Witness | None:
    return system.lift(h, twisted=twisted)
