"""Smoke tests for the gaussum python module (built into build/python)."""

import cmath
import math

import pytest

gaussum = pytest.importorskip("gaussum")


def test_field_basics():
    F = gaussum.Field(5)
    assert F.order == 5
    assert F.generator_code == 2  # smallest primitive root mod 5
    assert F.dlog(4) == 2

    F9 = gaussum.Field(3, 1, 2)
    assert F9.order == 9
    assert F9.mult_order == 8
    assert F9.trace(1) == 2  # trace of 1 is the degree
    # norm to level 1 lands in the prime subfield
    assert F9.norm_code(F9.generator_code, 1) < 3


def test_make_field_for_size():
    F = gaussum.make_field_for_size(49)
    assert F.p == 7
    assert F.q == 49
    assert F.m == 1


def test_gauss_sum_values():
    F = gaussum.Field(5)
    assert abs(gaussum.gauss_sum(F, 0) - 1) < 1e-12
    assert abs(gaussum.gauss_sum(F, 2) + math.sqrt(5)) < 1e-12
    batch = gaussum.gauss_all(F)
    assert len(batch) == 4
    for e in range(4):
        assert abs(batch[e] - gaussum.gauss_sum(F, e)) < 1e-9


def test_jacobi_two_routes():
    F = gaussum.Field(7)
    direct = gaussum.jacobi_sum(F, [2, 2])
    quotient = gaussum.jacobi_via_gauss(F, [2, 2])
    assert abs(direct - quotient) < 1e-10
    assert abs(abs(direct) - math.sqrt(7)) < 1e-10


def test_identity_checks():
    F = gaussum.make_field_for_size(9)
    assert gaussum.check_conjugation(F) <= 1e-9
    assert gaussum.check_frobenius(F) <= 1e-9
    assert gaussum.check_hd_product(F, 2) <= 1e-8
    assert gaussum.check_scaled(F) <= 1e-9
    assert gaussum.check_jacobi(F, 2) <= 1e-8
    suite = gaussum.identity_suite(5)
    assert all(row["residual"] <= 1e-8 for row in suite)


def test_roots():
    assert gaussum.roots_mu("1/2", 2, 5) == ["1/4", "3/4"]
    assert gaussum.roots_mu("0/1", 5, 5) == ["0/1"]
    assert gaussum.roots_over_k(0, 2, 4) == [0, 2]
    assert gaussum.roots_over_k(1, 2, 4) == []


def test_weyl_series():
    rows = gaussum.weyl_series(3, "[eta=0/1; a=(1)]*[eta=0/1; a=(2)]", [1, -1], 1, 5)
    # m = 1 is inadmissible for this config, so the series starts at m = 2
    assert [row["m"] for row in rows] == [2, 3, 4, 5]
    assert abs(rows[0]["sigma"] - complex(-1 / 3, 2 / (3 * math.sqrt(3)))) < 1e-12
    assert rows[0]["rhs"] is None  # calibration window
    for row in rows[2:]:
        assert row["rhs"] is not None
        assert row["abs_sigma"] <= row["rhs"]


def test_weyl_c_zero_is_exact():
    rows = gaussum.weyl_series(3, "[eta=0/1; a=(1)]*[eta=0/1; a=(2)]", [0, 0], 2, 3)
    for row in rows:
        assert row["sigma"] == 1.0 + 0.0j


def test_independence():
    res = gaussum.check_independence(5, "[eta=0/1; a=(1)]*[eta=1/2; a=(1)]")
    assert res["independent"]
    res = gaussum.check_independence(5, "[eta=1/2; a=(2)]*[eta=1/2; a=(2)]")
    assert not res["independent"]
    assert res["kernel"] == [1, -1]


def test_decompose_worked_example():
    res = gaussum.decompose(
        "[eta=0/1; a=(2)]*[eta=0/1; a=(1); exp=-1]*[eta=1/2; a=(1); exp=-1]",
        5,
        5,
        crosscheck=True,
        m_levels=[1, 2],
    )
    assert res["verdict"] == "InH"
    assert res["verified"]
    assert len(res["moves"]) == 1
    assert res["moves"][0]["kind"] == "R"
    assert res["moves"][0]["exponent"] == -1
    assert all(check["deviation"] <= 1e-8 for check in res["crosscheck"])

    res = gaussum.decompose("[eta=0/1; a=(1)]", 5, 5)
    assert res["verdict"] == "NotInH"
    assert res["witness"]["kind"] == "independent"


def test_decompose_parse_error():
    with pytest.raises(ValueError):
        gaussum.decompose("[eta=1/2; a=(1)", 5, 5)


def test_jacobi_preset():
    rows = gaussum.jacobi_preset_series("all_free", 3, n=2, m_first=1, m_last=3, c_max=1)
    assert rows
    firsts = [row for row in rows if row["c"] == [1]]
    assert abs(firsts[-1]["sigma"]) < abs(firsts[0]["sigma"])
    for row in rows:
        assert abs(row["sigma"]) <= 1.0 + 1e-9


def test_hd_lifting_needs_a_tower():
    base = gaussum.Field(5, 1, 1, top_level=2)
    ext = gaussum.Field(5, 1, 2, top_level=2)
    assert gaussum.check_hd_lifting(base, ext) <= 1e-8
    with pytest.raises(ValueError):
        gaussum.check_hd_lifting(gaussum.Field(5), ext)
