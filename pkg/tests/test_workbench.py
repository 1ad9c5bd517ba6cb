import pytest

from fixtures import THEOREM_BASES
from skoda import (CertificateError, Ideal, PreconditionError, bir_preclosure_member, bs_check, build_blowup,
                   chart_level_check, closure_generators, counterexample_suite, ideal_member, ideal_power,
                   main_theorem_verify, make_ring)
from skoda import workbench
from skoda.closure import certify_via
from skoda.workbench import (derive_elliptic_relations, elliptic_fixture, elliptic_ring, parse_hint,
                             theorem_model)

R = make_ring(["x", "y"])
x, y = R.gens()
R3 = make_ring(["x", "y", "z"])


# --- containment checks ----------------------------------------------------------------------

def test_bs_check_x2y2():
    r = bs_check(Ideal(R, [x ** 2, y ** 2]), 1)
    assert r.overall == "HOLDS" and r.failing == []
    assert [v["g"] for v in r.verdicts] == ["x^4", "x^3*y", "x^2*y^2", "x*y^3", "y^4"]


def test_bs_check_maximal_ideal_k2():
    r = bs_check(Ideal(R, [x, y]), 2)
    assert r.overall == "HOLDS" and len(r.closure_gens) == 4


def test_bs_check_padding_n():
    r = bs_check(Ideal(R, [x ** 2, y ** 2]), 1, n=3)
    assert r.n == 3 and r.overall == "HOLDS"
    assert {v["g"] for v in r.verdicts} == {"x^6", "x^5*y", "x^4*y^2", "x^3*y^3", "x^2*y^4", "x*y^5", "y^6"}
    with pytest.raises(PreconditionError):
        bs_check(Ideal(R, [x, y]), 1, n=1)


def test_bs_check_bad_k():
    with pytest.raises(PreconditionError):
        bs_check(Ideal(R, [x, y]), 0)


def test_bs_check_user_generators_and_hints():
    J = Ideal(R, [x ** 2, y ** 2])
    r = bs_check(J, 1, [("x^3*y", "power:2"), {"expr": "x^2*y^2 + x^4", "certificate": "reduction:1"}, "x*y^3"])
    assert r.overall == "HOLDS"
    assert r.closure_gens[0]["certificate"] == {"kind": "power", "s": 2}
    with pytest.raises(CertificateError):
        bs_check(J, 1, [("x^3*y", "power:1")])
    with pytest.raises(CertificateError):
        bs_check(J, 1, ["x^3"])


def test_parse_hint():
    assert parse_hint("power:3") == {"kind": "power", "s": 3}
    assert parse_hint("reduction:0") == {"kind": "reduction", "N": 0}
    assert parse_hint("newton") is None and parse_hint(None) is None
    with pytest.raises(PreconditionError):
        parse_hint("magic:2")


def test_report_json():
    data = bs_check(Ideal(R, [x, y]), 1).to_json()
    assert data["instance"] == {"ring": R.descriptor(), "J": ["x", "y"], "n": 2, "k": 1}
    assert data["overall"] == "HOLDS" and "timing_seconds" not in data
    assert "timing_seconds" in bs_check(Ideal(R, [x, y]), 1).to_json(timing=True)


# --- the elliptic counterexample --------------------------------------------------------------

def test_elliptic_relations_rederived():
    assert sorted(derive_elliptic_relations()) == sorted(elliptic_fixture()["relations"])


def test_elliptic_bs_check_fails():
    E = elliptic_ring()
    fx = elliptic_fixture()
    J = Ideal(E, [E(s) for s in fx["J"]])
    r = bs_check(J, 1, [(fx["h"], {"kind": "via_ideal", "ideal": fx["J_prime"]})])
    assert r.overall == "FAILS" and r.failing == ["a*c^2*e"]


def test_counterexample_suite():
    r = counterexample_suite(rederive=True)
    assert r.overall == "FAILS"
    assert r.checks and all(r.checks.values())
    assert r.checks["fixture_matches_derivation"]


# --- vanishing witnesses -------------------------------------------------------------------

def test_main_theorem_xy():
    res = main_theorem_verify(x * y, [x, y], 1)
    assert res.ok and res.witness is not None
    data = res.to_json()
    assert data["status"] == "WITNESS" and len(data["charts"]) == 2


def test_main_theorem_string_input_and_certificate():
    res = main_theorem_verify("x^3*y", [x ** 2, "y^2"], 1, {"kind": "power", "s": 2})
    assert res.ok and res.certificate == {"kind": "power", "s": 2}


def test_main_theorem_preconditions():
    with pytest.raises(PreconditionError):
        main_theorem_verify(x, [x ** 2, y ** 2], 1)
    with pytest.raises(CertificateError):
        main_theorem_verify(x * y, [x ** 2, y ** 2], 1, {"kind": "power", "s": 1})


def test_main_theorem_reports_falsification(monkeypatch):
    from skoda.complexes import TotalComplexSystem

    def no_lift(self, h, twisted=True):
        self.last_failure = {"stage": 0, "reason": "forced"}
        return None
    monkeypatch.setattr(TotalComplexSystem, "lift", no_lift)
    res = main_theorem_verify(x * y, [x, y], 1)
    assert res.status == "FALSIFICATION" and not res.ok
    assert res.to_json()["failure"]["reason"] == "forced"


@pytest.mark.parametrize("f,k", [(["x", "y"], 1), (["x^2", "y^2"], 1), (["x", "y"], 2)])
def test_witness_implies_chart_level(f, k):
    f = [R(g) for g in f]
    N = len(f) + k - 1
    for g, v in closure_generators(Ideal(R, f), N):
        res = main_theorem_verify(g, f, k, v.certificate)
        assert res.ok
        assert all(chart_level_check(g, f, k, res.model))


def test_chart_level_examples():
    assert chart_level_check(x * y, [x, y], 2) == [True, True]
    assert chart_level_check(x, [x, y], 2) == [False, False]
    assert chart_level_check(x, [x, y], 1) == [True, True]


# --- pre-closure membership ------------------------------------------------------------------

def test_bir_routes():
    J = Ideal(R, [x, y])
    M = theorem_model(x * y, [x, y], 1)
    ok, info = bir_preclosure_member(x * y, J, 1, M, detail=True)
    assert ok and info["route"] == "base"
    ok, info = bir_preclosure_member(x * y, J, 1, M, detail=True, use_base=False)
    assert ok and info["route"] == "witness"


def test_bir_negative():
    J = Ideal(R, [x ** 2, y ** 2])
    M = theorem_model(x, [x ** 2, y ** 2], 1)
    ok, info = bir_preclosure_member(x, J, 1, M, detail=True)
    assert not ok and info["route"] == "none"


def test_bir_model_with_other_charts_has_no_witness_route():
    J = Ideal(R, [x ** 2, y ** 2])
    M = build_blowup(R, [x, y], [x, y], 1)
    assert bir_preclosure_member(x ** 3 * y, J, 1, M, use_base=False) is False


def test_bir_elliptic():
    E = elliptic_ring()
    fx = elliptic_fixture()
    J = Ideal(E, [E(s) for s in fx["J"]])
    h = E(fx["h"])
    cert = certify_via(h, J, 2, Ideal(E, [E(s) for s in fx["J_prime"]])).certificate
    M = theorem_model(h, list(J.gens), 1, cert)
    ok, info = bir_preclosure_member(h, J, 1, M, detail=True)
    assert ok and info["route"] == "witness"
    assert not ideal_member(h, J)


@pytest.mark.parametrize("names,gens", THEOREM_BASES[:4])
def test_bir_monotone_in_k(names, gens):
    ring = make_ring(names)
    f = [ring(g) for g in gens]
    J = Ideal(ring, f)
    # closure(J^(n+1)) lies in J^2 Bir, hence in J Bir
    for g, v in closure_generators(J, len(f) + 1):
        M2 = theorem_model(g, f, 2, v.certificate)
        assert bir_preclosure_member(g, J, 2, M2, use_base=False)
        assert bir_preclosure_member(g, J, 1, M2)


def test_bir_base_route_agrees_with_membership():
    J = Ideal(R, [x ** 2, y ** 2])
    M = theorem_model(x ** 2 * y, [x ** 2, y ** 2], 1)
    assert bir_preclosure_member(x ** 2 * y, J, 1, M) == ideal_member(x ** 2 * y, ideal_power(J, 1))


def test_elliptic_ring_rederive_flag():
    assert elliptic_ring(rederive=True) == elliptic_ring()
    assert workbench.ELLIPTIC_VARS == ["a", "b", "c", "d", "e", "g"]
