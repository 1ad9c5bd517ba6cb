import pytest

from skoda import (FreeComplex, ModuleMatrix, TotalComplexSystem, build_blowup, check_d_squared,
                   class_vanishes_in_H0, homology_is_zero_at, koszul, l_complex, make_ring)
from skoda.blowup import CechComplex
from skoda.complexes import Witness
from skoda.errors import SkodaError

R = make_ring(["x", "y"])
x, y = R.gens()
R3 = make_ring(["x", "y", "z"])


def test_koszul_d_squared():
    assert check_d_squared(koszul([x, y]))


def test_broken_sign_detected():
    K = koszul(list(R3.gens()))
    d2 = K.d(2)
    entries = [list(row) for row in d2.entries]
    entries[0][0] = -entries[0][0]
    broken = FreeComplex(R3, K.ranks, [K.d(1), ModuleMatrix(R3, entries, d2.rows, d2.cols), K.d(3)])
    assert not check_d_squared(broken)


def test_l2_xyz_d_squared():
    assert check_d_squared(l_complex(list(R3.gens()), 2))


def test_shape_mismatch_rejected():
    with pytest.raises(SkodaError):
        FreeComplex(R, [1, 2], [ModuleMatrix(R, [[x, y, x]], 1, 3)])


def test_homology_examples():
    assert homology_is_zero_at(koszul([x, y]), 1)
    assert not homology_is_zero_at(koszul([x, x]), 1)
    T = make_ring(["t"])
    L = l_complex([T.one(), T("t")], 2)
    assert all(homology_is_zero_at(L, i) for i in range(1, L.length + 1))


def test_koszul_non_regular_higher_homology():
    # (x, xy) is not a regular sequence: H_1 != 0
    assert not homology_is_zero_at(koszul([x, x * y]), 1)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_regular_sequence_resolution(n, k):
    f = list(R3.gens())[:n]
    L = l_complex(f, k)
    assert all(homology_is_zero_at(L, i) for i in range(1, n + 1))


# --- lifting systems ------------------------------------------------------------------

def blowup_xy_squared():
    return build_blowup(R, ["x^2", "x*y", "y^2"], [x, y], 2)


def system(model, f, k):
    return TotalComplexSystem(l_complex(f, k), CechComplex(model), f)


def test_witness_for_chart_generator_power():
    S = system(blowup_xy_squared(), [x, y], 1)
    w = class_vanishes_in_H0(S, x ** 2)
    assert w is not None and S.verify(w)


def test_witness_for_xy():
    S = system(blowup_xy_squared(), [x, y], 1)
    w = class_vanishes_in_H0(S, x * y)
    assert w is not None and S.verify(w)
    assert len(w.stages) == 2
    assert set(w.stages[0]) == {(0,), (1,)} and set(w.stages[1]) == {(0, 1)}


def test_no_witness_for_x():
    S = system(blowup_xy_squared(), [x, y], 1)
    assert class_vanishes_in_H0(S, x) is None
    assert S.last_failure["stage"] == 0


def test_tampered_witness_rejected():
    S = system(blowup_xy_squared(), [x, y], 1)
    w = class_vanishes_in_H0(S, x * y)
    bad_stage = {g: [e + 1 for e in v] for g, v in w.stages[1].items()}
    forged = Witness(w.h, [w.stages[0], bad_stage], w.twisted)
    assert not S.verify(forged)
    assert not S.verify(Witness(w.h, w.stages[:1], w.twisted))


def test_witness_json():
    S = system(blowup_xy_squared(), [x, y], 1)
    data = class_vanishes_in_H0(S, x * y).to_json()
    assert data["h"] == "x*y"
    entries = data["stages"]
    assert {(e["homological_degree"], e["cech_degree"]) for e in entries} == {(1, 0), (2, 1)}


@pytest.mark.parametrize("k", [1, 2])
def test_total_differential_squares_to_zero(k):
    S = system(blowup_xy_squared(), [x, y], k)
    assert S.check_d_squared_random(trials=12, seed=3)


def test_total_differential_three_charts():
    X, Y, Z = R3.gens()
    model = build_blowup(R3, [X, Y, Z], [X, Y, Z], 1)
    S = TotalComplexSystem(l_complex([X, Y, Z], 2), CechComplex(model), [X, Y, Z])
    assert S.check_d_squared_random(trials=12, seed=5)


def test_untwisted_lift_also_verifies():
    S = system(blowup_xy_squared(), [x, y], 2)
    w = S.lift(x ** 3, twisted=False)
    assert w is not None and S.verify(w)
    assert w.twisted == [False, False]
