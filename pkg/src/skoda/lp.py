"""Exact feasibility for small linear programs over the rationals.

Two-phase simplex on a dense ``Fraction`` tableau with Bland's rule, so it
always terminates.  Sizes here are tiny (a few rows, a few dozen columns).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def feasible_point(A: Sequence[Sequence], b: Sequence) -> list | None:
    """Return ``x >= 0`` with ``A x = b`` exactly, or ``None`` if infeasible."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        rows.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    width = n + m
    basis = [n + i for i in range(m)]
    # phase-one objective: minimise the sum of artificials, kept as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(width + 1):
            cost[j] -= row[j]
    for j in range(n, width):
        cost[j] += 1
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return None  # cannot happen in phase one (bounded below by zero)
        _pivot(rows, cost, best[1], enter)
        basis[best[1]] = enter
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][-1]
    return x


def _pivot(rows, cost, r, c):
    piv = rows[r][c]
    prow = [v / piv for v in rows[r]]
    rows[r] = prow
    for i, row in enumerate(rows):
        if i != r and row[c]:
            f = row[c]
            rows[i] = [a - f * b for a, b in zip(row, prow)]
    if cost[c]:
        f = cost[c]
        cost[:] = [a - f * b for a, b in zip(cost, prow)]
