import json
import math

import pytest

ellk = pytest.importorskip("ellk")


def test_moment_matches_zeta3():
    value = float(ellk.moment("g1_4", 4, 1, 0, digits=30))
    assert math.isclose(value, 3.5 * 1.2020569031595942, rel_tol=1e-14)


def test_two_moment_routes_agree():
    a = ellk.moment("g4", 3, 1, 0, digits=30)
    b = ellk.moment_via_lvalue("g4", 3, 1, 0, digits=30)
    assert a[:25] == b[:25]


def test_eta_lvalue_and_moment():
    L = float(ellk.lvalue_eta([(2, 12)], 5, digits=30))
    M = float(ellk.moment("g1_4", 6, 1, 0, digits=30))
    assert math.isclose(M, 24 * L, rel_tol=1e-14)


def test_cm_rational():
    out = ellk.cm_check(8, 3, 2, digits=60)
    assert out["rational"] == "1/12"
    assert out["sqrt2_multiple"] is None


def test_rank_within_bound():
    out = ellk.numeric_rank("g1_4", 5, digits=100)
    assert out["verified"]
    assert out["rank"] == 1 <= out["bound"]


def test_suite_rows():
    rows = ellk.run_suite("appendix", digits=30)
    assert rows and all(r["status"] == "pass" for r in rows)
    json.dumps(rows)
    assert "appendix" in ellk.suite_names()


def test_bad_input_raises():
    with pytest.raises(ValueError):
        ellk.moment("g7", 4, 1, 0)
    with pytest.raises(ValueError):
        ellk.moment("g1_4", 4, 1, 5)
