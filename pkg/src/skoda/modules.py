"""Submodules of free modules over presented rings.

Vectors are encoded as term dicts whose monomials carry the coordinate in
slot 0.  Columns of a matrix ``M`` (``r`` rows, ``s`` columns) become
``(M e_j, e_j)`` in a free module of rank ``r + s``; the trailing ``s``
"tracking" coordinates record how an element was combined from the columns.
Ring relations enter as ``q * eps_i`` for every relation ``q`` and every
row ``i``.  With position-over-term ordering and the first ``r`` positions
largest, elements led by a tracking position are exactly the syzygies.
"""

from __future__ import annotations

from collections import OrderedDict
from typing import Sequence

from . import gbcore
from .errors import SkodaError
from .ring import Poly, RingPresentation

_MOD_CACHE: "OrderedDict[tuple, list]" = OrderedDict()


class ModuleMatrix:
    """An ``rows x cols`` matrix of ring elements (a map R^cols -> R^rows)."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: RingPresentation, entries: Sequence[Sequence], rows: int | None = None,
                 cols: int | None = None):
        self.ring = ring
        ents = [[e if isinstance(e, Poly) else (ring(e) if isinstance(e, str) else ring.const(e))
                 for e in row] for row in entries]
        self.rows = len(ents) if rows is None else rows
        self.cols = (len(ents[0]) if ents else 0) if cols is None else cols
        if len(ents) != self.rows or any(len(r) != self.cols for r in ents):
            raise SkodaError("ragged matrix")
        self.entries = [[ring.coerce(e) if e.ring is not ring else e for e in row] for row in ents]

    @classmethod
    def zeros(cls, ring, rows, cols):
        return cls(ring, [[ring.zero() for _ in range(cols)] for _ in range(rows)], rows, cols)

    @classmethod
    def from_columns(cls, ring, columns: Sequence[Sequence[Poly]], rows: int):
        entries = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(ring, entries, rows, len(columns))

    def column(self, j: int) -> list:
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, x: Sequence[Poly]) -> list:
        if len(x) != self.cols:
            raise SkodaError("vector length does not match matrix columns")
        out = []
        for row in self.entries:
            acc = self.ring.zero()
            for a, b in zip(row, x):
                if a.terms and b.terms:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __matmul__(self, other: "ModuleMatrix") -> "ModuleMatrix":
        if self.cols != other.rows:
            raise SkodaError("shape mismatch in matrix product")
        cols = [self.apply(c) for c in other.columns()]
        return ModuleMatrix.from_columns(self.ring, cols, self.rows)

    def scaled(self, c: Poly) -> "ModuleMatrix":
        return ModuleMatrix(self.ring, [[e * c for e in row] for row in self.entries], self.rows, self.cols)

    def mapped(self, fn, ring: RingPresentation) -> "ModuleMatrix":
        return ModuleMatrix(ring, [[fn(e) for e in row] for row in self.entries], self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        return (isinstance(other, ModuleMatrix) and self.ring == other.ring and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def to_strings(self) -> list:
        return [[str(e) for e in row] for row in self.entries]

    def __repr__(self):
        return f"ModuleMatrix({self.rows}x{self.cols}, {self.to_strings()})"


def _column_vectors(M: ModuleMatrix, track: bool) -> list:
    r = M.rows
    one = M.ring.field.one
    zero_mon = (0,) * M.ring.nvars
    out = []
    for j in range(M.cols):
        d = {}
        for i in range(r):
            for m, c in M.entries[i][j].terms.items():
                d[(i,) + m[1:]] = c
        if track:
            d[(r + j,) + zero_mon] = one
        if d:
            out.append(d)
    return out


def _relation_vectors(ring: RingPresentation, r: int) -> list:
    return [{(i,) + m[1:]: c for m, c in q.items()} for i in range(r) for q in ring.relations]


def _key(M: ModuleMatrix, track: bool, kernel: bool):
    return (M.ring, M.rows, M.cols, track, kernel,
            tuple(tuple(frozenset(e.terms.items()) for e in row) for row in M.entries))


def module_gb(M: ModuleMatrix, track: bool = True, kernel: bool = False) -> list:
    """GB of the columns of ``M`` (position over term), relations included.

    With ``track`` each column carries its own unit vector in extra
    positions, so cofactors can be read off.  Kernel elements (leading
    position in the tracking block) are kept only when ``kernel`` is set.
    """
    key = _key(M, track, kernel)
    cached = _MOD_CACHE.get(key)
    if cached is not None:
        _MOD_CACHE.move_to_end(key)
        return cached
    basis = gbcore.buchberger(_column_vectors(M, track), M.ring.hkey, M.ring.p,
                              known_gb=_relation_vectors(M.ring, M.rows), module=True,
                              cap_positions=M.rows if track else None,
                              discard_from=M.rows if track and not kernel else None)
    _MOD_CACHE[key] = basis
    if len(_MOD_CACHE) > 512:
        _MOD_CACHE.popitem(last=False)
    return basis


def _vector_dict(b: Sequence[Poly]) -> dict:
    d = {}
    for i, e in enumerate(b):
        for m, c in e.terms.items():
            d[(i,) + m[1:]] = c
    return d


def image_contains(M: ModuleMatrix, b: Sequence[Poly]) -> bool:
    """Is ``b`` in the column span of ``M`` (modulo the ring relations)?"""
    if len(b) != M.rows:
        raise SkodaError("right-hand side has the wrong length")
    if all(e.is_zero() for e in b):
        return True
    basis = module_gb(M, track=False)
    nf = gbcore.normal_form(_vector_dict(b), basis, M.ring.hkey, M.ring.p)
    return not nf


def module_solve(M: ModuleMatrix, b: Sequence[Poly]) -> list | None:
    """A vector ``x`` with ``M x == b`` in the presented ring, or ``None``."""
    if len(b) != M.rows:
        raise SkodaError("right-hand side has the wrong length")
    ring = M.ring
    if all(e.is_zero() for e in b):
        return [ring.zero() for _ in range(M.cols)]
    r = M.rows
    basis = module_gb(M, track=True)
    rem = gbcore.normal_form(_vector_dict(b), basis, ring.hkey, ring.p, stop_pos=r)
    if any(m[0] < r for m in rem):
        return None
    p = ring.p
    x = [dict() for _ in range(M.cols)]
    for m, c in rem.items():
        x[m[0] - r][(0,) + m[1:]] = (-c) % p if p else -c
    sol = [Poly(ring, d) for d in x]
    if M.apply(sol) != [ring.coerce(e) for e in b]:
        raise SkodaError("internal error: lift failed verification")
    return sol


def syzygies(M: ModuleMatrix) -> ModuleMatrix:
    """Columns generating the kernel of ``M`` over the presented ring."""
    ring = M.ring
    r = M.rows
    basis = module_gb(M, track=True, kernel=True)
    cols = []
    seen = set()
    for d in basis:
        lead = min(d, key=ring.hkey)
        if lead[0] < r:
            continue
        x = [dict() for _ in range(M.cols)]
        for m, c in d.items():
            if m[0] >= r:
                x[m[0] - r][(0,) + m[1:]] = c
        vec = [Poly(ring, e) for e in x]
        if all(v.is_zero() for v in vec):
            continue
        key = tuple(vec)
        if key not in seen:
            seen.add(key)
            cols.append(vec)
    return ModuleMatrix.from_columns(ring, cols, M.cols)
