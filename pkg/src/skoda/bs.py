"""Koszul complexes and the L-complexes L^k(f) as Eagon-Northcott complexes.

For ``f = (f_1..f_n)`` and ``k >= 1`` let ``A`` be the ``k x (n+k-1)`` banded
matrix whose row ``r`` carries ``f_1..f_n`` starting in column ``r``.  Its
Eagon-Northcott complex has

    EN_0 = R,   EN_i = wedge^{k+i-1} R^{n+k-1} (x) D_{i-1}(R^k)^*  (i >= 1),

with ``d_1`` the maximal minors of ``A`` and, for ``i >= 2``,

    d(e_J (x) u^(a)) = sum_p (-1)^p sum_{r: a_r > 0} A[r, j_p] e_{J - j_p} (x) u^(a - eps_r).

The maximal minors of ``A`` are integer combinations of the degree-``k``
monomials in ``f`` through a unitriangular matrix ``U``; replacing the basis
of ``EN_1`` accordingly turns ``d_1`` into the row of those monomials, so that
the image of ``d_1`` is literally ``J^k``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from .complexes import FreeComplex
from .errors import PreconditionError, SkodaError
from .modules import ModuleMatrix
from .ring import Poly, RingPresentation, make_ring


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _det(rows: list) -> Poly:
    k = len(rows)
    ring = rows[0][0].ring
    total = ring.zero()
    for perm in permutations(range(k)):
        term = ring.const(_perm_sign(perm))
        for r in range(k):
            e = rows[r][perm[r]]
            if e.is_zero():
                term = None
                break
            term = term * e
        if term is not None:
            total = total + term
    return total


def _check(f: Sequence[Poly], k: int):
    if not f:
        raise PreconditionError("need at least one generator")
    if k < 1:
        raise PreconditionError("k must be >= 1")
    ring = f[0].ring
    if any(g.ring != ring for g in f):
        raise SkodaError("generators live in different rings")
    return ring


def koszul(f: Sequence[Poly]) -> FreeComplex:
    """Koszul complex; basis of degree ``i`` is the ``i``-subsets in lex order."""
    ring = _check(f, 1)
    n = len(f)
    labels = [list(combinations(range(n), i)) for i in range(n + 1)]
    diffs = []
    for i in range(1, n + 1):
        index = {J: r for r, J in enumerate(labels[i - 1])}
        cols = []
        for J in labels[i]:
            col = [ring.zero() for _ in labels[i - 1]]
            for p, j in enumerate(J):
                g = f[j] if p % 2 == 0 else -f[j]
                col[index[J[:p] + J[p + 1:]]] = col[index[J[:p] + J[p + 1:]]] + g
            cols.append(col)
        diffs.append(ModuleMatrix.from_columns(ring, cols, len(labels[i - 1])))
    return FreeComplex(ring, [len(l) for l in labels], diffs, labels, {"kind": "koszul", "n": n})


def bs_matrix(f: Sequence[Poly], k: int) -> ModuleMatrix:
    ring = _check(f, k)
    n = len(f)
    ncols = n + k - 1
    rows = []
    for r in range(k):
        rows.append([f[c - r] if 0 <= c - r < n else ring.zero() for c in range(ncols)])
    return ModuleMatrix(ring, rows, k, ncols)


def _compositions(total: int, parts: int) -> list:
    """Multi-exponents of the given total, in lexicographically decreasing order."""
    if parts == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        out.extend((first,) + rest for rest in _compositions(total - first, parts - 1))
    return out


def _monomial_exponents(n: int, k: int) -> list:
    return _compositions(k, n)


@lru_cache(maxsize=None)
def minor_transition(n: int, k: int) -> tuple:
    """Subsets, monomials and the integer matrix ``U`` with minor_J = sum U[J][a] f^a.

    Computed generically over a polynomial ring in ``n`` indeterminates.
    Subsets are paired with monomials through the diagonal term
    ``prod_r f_{J_r - r}``, under which ``U`` is unitriangular.
    """
    names = [f"F{i}" for i in range(n)]
    G = make_ring(names)
    f = G.gens()
    A = bs_matrix(f, k)
    subsets = list(combinations(range(n + k - 1), k))
    monos = _monomial_exponents(n, k)
    mindex = {a: i for i, a in enumerate(monos)}
    U = []
    for J in subsets:
        minor = _det([[A.entries[r][c] for c in J] for r in range(k)])
        row = [0] * len(monos)
        for m, c in minor.terms.items():
            if c.denominator != 1:
                raise SkodaError("non-integral minor coefficient")
            row[mindex[m[1:]]] = int(c)
        U.append(row)
    diag = []
    for J in subsets:
        e = [0] * n
        for r, c in enumerate(J):
            e[c - r] += 1
        diag.append(tuple(e))
    if len(set(diag)) != len(diag):
        raise SkodaError("minor/monomial pairing is not a bijection")
    # reorder monomials to match subsets; check triangularity w.r.t. that pairing
    order = [mindex[d] for d in diag]
    Up = [[U[i][order[j]] for j in range(len(subsets))] for i in range(len(subsets))]
    if any(Up[i][i] != 1 for i in range(len(subsets))) or _int_det(Up) not in (1, -1):
        raise SkodaError("minor transition matrix is not unimodular")
    return tuple(subsets), tuple(diag), tuple(tuple(r) for r in Up)


def _int_det(M: list) -> int:
    from fractions import Fraction
    a = [[Fraction(x) for x in row] for row in M]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                q = a[r][c] / a[c][c]
                a[r] = [x - q * y for x, y in zip(a[r], a[c])]
    return int(det)


def l_complex(f: Sequence[Poly], k: int) -> FreeComplex:
    """The Buchsbaum-Eisenbud complex L^k(f), of length ``n = len(f)``.

    Labels: degree 0 is ``((), ())``; degree ``i >= 1`` is
    ``(index subset of columns, multi-exponent)``; in degree 1 the
    multi-exponent is that of the monomial ``f^a`` which the basis element
    maps to.
    """
    ring = _check(f, k)
    n = len(f)
    N = n + k - 1
    A = bs_matrix(f, k)
    subsets1, monos, Up = minor_transition(n, k)
    labels: list = [[((), ())]]
    labels.append([(J, a) for J, a in zip(subsets1, monos)])
    for i in range(2, n + 1):
        labels.append([(J, a) for J in combinations(range(N), k + i - 1)
                       for a in _compositions(i - 1, k)])
    # degree one: the monomial row
    d1 = ModuleMatrix(ring, [[_f_power(f, a, ring) for a in monos]], 1, len(monos))
    diffs = [d1]
    for i in range(2, n + 1):
        src = labels[i]
        tgt = labels[i - 1] if i > 2 else [(J, ()) for J in subsets1]
        tindex = {}
        for r, (J, a) in enumerate(tgt):
            tindex[(J, a if i > 2 else (0,) * k)] = r
        cols = []
        for J, a in src:
            col = [ring.zero() for _ in tgt]
            for p, j in enumerate(J):
                rest = J[:p] + J[p + 1:]
                for r in range(k):
                    if a[r] == 0:
                        continue
                    entry = A.entries[r][j]
                    if entry.is_zero():
                        continue
                    b = a[:r] + (a[r] - 1,) + a[r + 1:]
                    idx = tindex[(rest, b)]
                    col[idx] = col[idx] + (entry if p % 2 == 0 else -entry)
            cols.append(col)
        D = ModuleMatrix.from_columns(ring, cols, len(tgt))
        if i == 2:
            # change of basis in degree one: new coordinates are U^T times old
            D = _left_multiply_int([list(r) for r in zip(*Up)], D)
        diffs.append(D)
    ranks = [len(l) for l in labels]
    meta = {"kind": "l_complex", "n": n, "k": k}
    return FreeComplex(ring, ranks, diffs, labels, meta)


def _f_power(f, a, ring) -> Poly:
    out = ring.one()
    for g, e in zip(f, a):
        if e:
            out = out * g ** e
    return out


def _left_multiply_int(M: list, D: ModuleMatrix) -> ModuleMatrix:
    ring = D.ring
    rows = []
    for row in M:
        out = []
        for j in range(D.cols):
            acc = ring.zero()
            for c, i in ((c, i) for i, c in enumerate(row) if c):
                e = D.entries[i][j]
                if e.terms:
                    acc = acc + e.scale(c)
            out.append(acc)
        rows.append(out)
    return ModuleMatrix(ring, rows, len(M), D.cols)


def rank_formula(n: int, k: int, i: int) -> int:
    if i == 0:
        return 1
    return comb(n + k - 1, k + i - 1) * comb(k + i - 2, i - 1)


def twisted_chart_complex(f: Sequence[Poly], k: int, j: int, chart, ratios: Sequence[Poly] | None = None) -> FreeComplex:
    """The unit-ideal complex L^k(f_1/f_j, ..., f_n/f_j) over chart ``j``.

    ``chart`` is either a chart object carrying ``ratios`` (the images of
    ``f_i / f_j``) or a ring presentation together with explicit ``ratios``.
    The metadata records the twists identifying it with the chart
    restriction of the exact twisted complex: degree ``i`` of L^k(f) is
    scaled by ``f_j^(i-1)`` for ``i >= 1`` and degree 0 by ``f_j^(n+k-1)``.
    """
    n = len(f)
    if ratios is None:
        ratios = chart.ratios
        ring = chart.ring
    else:
        ring = chart if isinstance(chart, RingPresentation) else chart.ring
    ratios = [ring.coerce(r) if isinstance(r, Poly) else ring(r) for r in ratios]
    if len(ratios) != n:
        raise PreconditionError("need one ratio per generator")
    if ratios[j] != ring.one():
        raise PreconditionError("the chart generator must map to 1")
    C = l_complex(ratios, k)
    C.meta.update({"chart": j, "twist_exponents": [n + k - 1] + list(range(n)),
                   "kind": "twisted_chart_complex"})
    return C
