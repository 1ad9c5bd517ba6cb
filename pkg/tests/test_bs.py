from math import comb

import pytest
import sympy

from skoda import Ideal, bs_matrix, check_d_squared, homology_is_zero_at, ideal_equal, ideal_power, koszul
from skoda import l_complex, make_ring, twisted_chart_complex
from skoda.blowup import build_blowup
from skoda.bs import rank_formula
from skoda.errors import PreconditionError

R = make_ring(["x", "y"])
x, y = R.gens()
G = make_ring(["f1", "f2", "f3"])
f1, f2, f3 = G.gens()


def to_sympy(M):
    return sympy.Matrix([[sympy.sympify(str(e).replace("^", "**")) for e in row] for row in M.entries])


# --- Koszul -----------------------------------------------------------------------------

def test_koszul_one():
    K = koszul([x])
    assert K.ranks == [1, 1]
    assert K.d(1).entries == [[x]]


def test_koszul_two():
    K = koszul([x, y])
    assert K.ranks == [1, 2, 1]
    assert K.d(1).entries == [[x, y]]
    assert K.d(2).entries == [[-y], [x]]
    assert K.labels[1] == [(0,), (1,)]


def test_koszul_three():
    R3 = make_ring(["x", "y", "z"])
    K = koszul(list(R3.gens()))
    assert (to_sympy(K.d(2)) * to_sympy(K.d(3))).is_zero_matrix
    assert ideal_equal(Ideal(R3, K.d(1).entries[0]), Ideal(R3, list(R3.gens())))


# --- banded matrix --------------------------------------------------------------------------

def test_bs_matrix_examples():
    z = G.zero()
    assert bs_matrix([f1, f2, f3], 2).entries == [[f1, f2, f3, z], [z, f1, f2, f3]]
    assert bs_matrix([f1, f2], 1).entries == [[f1, f2]]
    assert bs_matrix([f1, f2], 3).entries == [[f1, f2, z, z], [z, f1, f2, z], [z, z, f1, f2]]


@pytest.mark.parametrize("n,k", [(1, 1), (2, 3), (3, 2), (4, 4)])
def test_bs_matrix_band(n, k):
    ring = make_ring([f"f{i}" for i in range(1, n + 1)])
    f = ring.gens()
    A = bs_matrix(f, k)
    assert (A.rows, A.cols) == (k, n + k - 1)
    for i in range(k):
        for j in range(n + k - 1):
            expect = f[j - i] if 0 <= j - i < n else ring.zero()
            assert A.entries[i][j] == expect


def test_bs_matrix_rejects_bad_input():
    with pytest.raises(PreconditionError):
        bs_matrix([], 1)
    with pytest.raises(PreconditionError):
        bs_matrix([x], 0)


# --- L-complex ------------------------------------------------------------------------------

def test_l_complex_k1_is_koszul():
    L = l_complex([x, y], 1)
    K = koszul([x, y])
    assert L.ranks == K.ranks
    assert L.d(1).entries == K.d(1).entries
    assert L.d(2).entries in (K.d(2).entries, [[-e for e in row] for row in K.d(2).entries])


def test_l_complex_xy_squared():
    L = l_complex([x, y], 2)
    assert L.ranks == [1, 3, 2]
    assert L.d(1).entries == [[x ** 2, x * y, y ** 2]]
    assert ideal_equal(Ideal(R, L.d(1).entries[0]), ideal_power(Ideal(R, [x, y]), 2))
    assert homology_is_zero_at(L, 1) and homology_is_zero_at(L, 2)


def test_l_complex_unit_ideal_exact():
    T = make_ring(["t"])
    L = l_complex([T.one(), T("t")], 2)
    assert all(homology_is_zero_at(L, i) for i in range(1, 3))


def test_labels_record_subsets_and_exponents():
    L = l_complex([x, y], 2)
    assert L.labels[0] == [((), ())]
    assert [a for _, a in L.labels[1]] == [(2, 0), (1, 1), (0, 2)]
    assert all(len(J) == 3 and sum(a) == 1 for J, a in L.labels[2])


def _diagonal_signs(A, B, row_signs):
    """Column signs s with A = diag(row_signs) B diag(s), or None."""
    signs = []
    for j in range(B.cols):
        s = None
        for i in range(B.rows):
            b = B.entries[i][j] * row_signs[i]
            a = A.entries[i][j]
            if b.is_zero() and a.is_zero():
                continue
            if a == b:
                cand = 1
            elif a == -b:
                cand = -1
            else:
                return None
            if s is not None and cand != s:
                return None
            s = cand
        signs.append(1 if s is None else s)
    return signs


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_k1_matches_koszul_up_to_signs(n):
    ring = make_ring([f"f{i}" for i in range(1, n + 1)])
    f = ring.gens()
    L, K = l_complex(f, 1), koszul(f)
    assert L.ranks == K.ranks
    signs = [1]
    for i in range(1, n + 1):
        signs = _diagonal_signs(L.d(i), K.d(i), signs)
        assert signs is not None, i


GRID = [(n, k) for n in range(1, 5) for k in range(1, 5)]


@pytest.mark.parametrize("n,k", GRID)
def test_generic_d_squared_and_ranks(n, k):
    ring = make_ring([f"f{i}" for i in range(1, n + 1)])
    L = l_complex(ring.gens(), k)
    assert check_d_squared(L)
    assert L.ranks[1] == comb(n + k - 1, k)
    assert L.ranks == [rank_formula(n, k, i) for i in range(n + 1)]


@pytest.mark.parametrize("n,k", [(2, 2), (3, 2), (2, 3)])
def test_d_squared_by_sympy(n, k):
    ring = make_ring([f"f{i}" for i in range(1, n + 1)])
    L = l_complex(ring.gens(), k)
    for i in range(1, n):
        assert (to_sympy(L.d(i)) * to_sympy(L.d(i + 1))).is_zero_matrix


@pytest.mark.parametrize("n,k", GRID)
def test_h0_is_quotient_by_power(n, k):
    ring = make_ring([f"f{i}" for i in range(1, n + 1)])
    f = ring.gens()
    L = l_complex(f, k)
    assert ideal_equal(Ideal(ring, L.d(1).entries[0]), ideal_power(Ideal(ring, f), k))


def test_betti_numbers_of_maximal_ideal_powers():
    # minimal resolution of (x,y,z)^2: Betti numbers 1, 6, 8, 3
    R3 = make_ring(["x", "y", "z"])
    assert l_complex(list(R3.gens()), 2).ranks == [1, 6, 8, 3]


def test_non_variable_generators():
    R3 = make_ring(["x", "y", "z"])
    f = [R3("x^2 + y"), R3("y*z - x"), R3("z^3")]
    for k in (1, 2, 3):
        L = l_complex(f, k)
        assert check_d_squared(L)
        assert ideal_equal(Ideal(R3, L.d(1).entries[0]), ideal_power(Ideal(R3, f), k))


# --- twisted chart complexes ------------------------------------------------------------------

def test_twisted_chart_xy_k1():
    model = build_blowup(R, [x, y], [x, y], 1)
    C = twisted_chart_complex([x, y], 1, 0, model.charts[0])
    assert homology_is_zero_at(C, 1)
    assert C.meta["twist_exponents"] == [2, 0, 1]


def test_twisted_chart_xy_k2():
    model = build_blowup(R, [x, y], [x, y], 1)
    chart = model.charts[0]
    C = twisted_chart_complex([x, y], 2, 0, chart)
    t = chart.ring.var("t2")
    assert C.d(1).entries == [[chart.ring.one(), t, t ** 2]]


def test_twisted_chart_three_generators_d_squared():
    R3 = make_ring(["x", "y", "z"])
    f = list(R3.gens())
    model = build_blowup(R3, f, f, 1)
    for j in range(3):
        assert check_d_squared(twisted_chart_complex(f, 2, j, model.charts[j]))


def test_twisted_chart_needs_unit_ratio():
    with pytest.raises(PreconditionError):
        twisted_chart_complex([x, y], 1, 0, R, ratios=[x, y])
