import pytest

import dioph


def test_version():
    assert dioph.__version__ == "1.0.0"


def test_exact_helpers():
    assert dioph.det3((5, 3, 2), (21, 13, 8), (208, 129, 80)) == 2
    x, y, z = (3, -1, 4), (1, 5, -9), (2, 6, 5)
    w = dioph.wedge(x, y)
    assert dioph.det3(x, y, z) == sum(a * b for a, b in zip(w, z))
    assert dioph.fibonacci(30) == 832040
    # big integers survive the round trip
    big = 10**40 + 7
    assert dioph.det3((big, 0, 0), (0, 1, 0), (0, 0, 1)) == big


def test_e2_terms_and_identities():
    terms = dioph.ea_terms(2, 10)
    assert terms[4] == (5, 3, 2)
    assert terms[6] == (208, 129, 80)
    seq = dioph.sequence("ea(2)", 24)
    rep = dioph.verify_identities(seq, 3, 20)
    assert rep["ok"]
    assert rep["checks"] > 400
    xi = dioph.ea_xi(seq, 128)
    assert abs(float(xi["center"]) - 0.62018075080635) < 1e-12


def test_thresholds():
    rows = dioph.threshold_table("padic", "1e-8")
    assert any(abs(float(r["value"]["center"]) - 1.615358873) < 1e-6 for r in rows)


def test_hensel_and_strong_approx():
    h = dioph.hensel_lift("1,0,-2", 3, 7, 1, 50)
    assert h["residual_valuation"] >= 50
    assert h["dist"] == "1/7"
    r = dioph.strong_approx("0", "4", [(2, 1, 30, "1/4")])
    assert int(r) % 4 == 1


def test_systems():
    sys_ = {"n": 2, "S": [], "xi": {"inf": "preset:ea(2)"}, "lambda": {"inf": "0"}, "c": "2"}
    res = dioph.search(sys_, 10)
    assert ["1", "0", "0"] in res["primitives"]
    mk = {"n": 2, "S": [2], "xi": {"inf": "1.4142", "2": "123456789012345"},
          "lambda": {"inf": "1/5", "2": "3/10"}, "c": "2"}
    out = dioph.minkowski(mk, 100)
    assert out["check"]["ok"]


def test_errors_are_typed():
    with pytest.raises(dioph.DiophError):
        dioph.threshold_table("complex")
    with pytest.raises(dioph.DiophError):
        dioph.hensel_lift("1,0,-3", 1, 7, 10, 10)
