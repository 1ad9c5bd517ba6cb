"""Fixture sets shared by unit and acceptance tests."""

import itertools
from functools import lru_cache

from oracles import monomials_upto


def monomial_fixtures():
    """Monomial ideals (as exponent lists) in two and three variables."""
    two = [
        [(2, 0), (0, 2)], [(1, 0), (0, 1)], [(3, 0), (0, 2)], [(2, 0), (1, 1)],
        [(3, 0), (0, 3)], [(2, 1), (0, 3)], [(4, 0), (1, 1), (0, 4)], [(3, 0), (1, 2)],
        [(2, 0), (0, 3)], [(1, 2), (2, 1)],
    ]
    three = [
        [(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(2, 0, 0), (0, 2, 0), (0, 0, 2)],
        [(1, 1, 0), (0, 1, 1), (1, 0, 1)], [(2, 0, 0), (0, 1, 1)], [(3, 0, 0), (0, 2, 0), (0, 0, 1)],
        [(2, 1, 0), (0, 0, 2)],
    ]
    return [(2, g) for g in two] + [(3, g) for g in three]


@lru_cache(maxsize=None)
def grid_ideals():
    """Every monomial ideal in Q[x,y,z] with at most 3 minimal generators of degree 1..3."""
    mons = [e for e in monomials_upto(3, 3) if sum(e) >= 1]
    seen = set()
    out = []
    for r in (1, 2, 3):
        for combo in itertools.combinations(mons, r):
            if any(a != b and all(x <= y for x, y in zip(a, b)) for a in combo for b in combo):
                continue
            key = tuple(sorted(combo))
            if key not in seen:
                seen.add(key)
                out.append(key)
    return out


# regular-base instances for the theorem checks: (variables, generators of J)
THEOREM_BASES = [
    (["x", "y"], ["x", "y"]),
    (["x", "y"], ["x^2", "y^2"]),
    (["x", "y"], ["x^3", "y^2"]),
    (["x", "y"], ["x^2", "x*y"]),
    (["x", "y", "z"], ["x", "y", "z"]),
    (["x", "y", "z"], ["x^2", "y^2", "z^2"]),
    (["x", "y", "z"], ["x*y", "y*z", "x*z"]),
]
