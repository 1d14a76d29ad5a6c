import os

os.environ.setdefault("QUATBRANDT_ENABLE_DISK_CACHE", "0")

import math  # noqa: E402

import numpy as np  # noqa: E402
import pytest  # noqa: E402
from sympy import Poly, expand  # noqa: E402

from quatbrandt.brandt.matrices import hecke_degree  # noqa: E402
from quatbrandt.errors import SpectralError  # noqa: E402
from quatbrandt.graphs.isogeny import big_graph  # noqa: E402
from quatbrandt.runtime.workbench import get_workbench  # noqa: E402
from quatbrandt.spectral.charpoly import (  # noqa: E402
    as_poly,
    char_poly,
    count_real_roots,
    real_root_count,
    roots_in_interval,
    symmetrizing_weights,
    x,
)
from quatbrandt.spectral.ramanujan import (  # noqa: E402
    SURVEY_COLUMNS,
    SurveyRow,
    ramanujan_survey,
    ramanujan_verdict,
    survey_to_csv,
)
from tests.matrix_helpers import consistent_permutation, slow_tests_enabled  # noqa: E402

# adjacency of the big graph for (g, l, p) = (2, 2, 11)
AD_2_2_11 = [
    [3, 9, 0, 3, 0],
    [4, 3, 4, 4, 0],
    [0, 3, 6, 0, 6],
    [1, 3, 0, 3, 8],
    [0, 0, 3, 4, 8],
]


def _coeffs(expr) -> list[int]:
    return [int(c) for c in Poly(expand(expr), x).all_coeffs()]


def _nontrivial_max_abs(rows, k: int) -> float:
    eig = sorted(np.linalg.eigvals(np.array(rows, dtype=float)), key=lambda z: -abs(z))
    rest = list(eig)
    rest.remove(min(rest, key=lambda z: abs(z - k)))
    return max(abs(z) for z in rest)


def _assert_float_oracle_agrees(rows, report) -> None:
    if report.h == 1:
        assert report.second_largest_abs is None
        return
    v = _nontrivial_max_abs(rows, report.degree)
    lo, hi = report.second_largest_abs
    assert float(lo) - 1e-9 <= v <= float(hi) + 1e-9, f"float max |lambda| {v} outside [{lo}, {hi}]"
    bound = 2 * math.sqrt(report.degree - 1)
    if abs(v - bound) > 1e-9:
        assert report.ramanujan == (v < bound)


def test_charpoly_of_the_2_2_11_adjacency() -> None:
    expected = _coeffs((x - 15) * (x**2 - 14 * x + 46) * (x**2 + 6 * x + 6))
    assert char_poly(AD_2_2_11) == expected
    assert real_root_count(expected) == 5


def test_2_2_11_is_not_ramanujan() -> None:
    report = ramanujan_verdict(AD_2_2_11)
    assert report.degree == 15
    assert report.ramanujan is False
    assert report.verdict == "NOT RAMANUJAN"
    lo, hi = report.second_largest_abs
    assert lo <= 7 + math.sqrt(3) <= hi
    assert float(hi - lo) < 1e-9
    # floating oracle agrees with the exact decision
    assert _nontrivial_max_abs(AD_2_2_11, 15) > 2 * math.sqrt(14)


def test_2_2_7_is_ramanujan() -> None:
    rows = [[11, 4], [6, 9]]
    report = ramanujan_verdict(rows)
    assert report.charpoly == tuple(_coeffs((x - 15) * (x - 5)))
    assert report.ramanujan is True
    lo, hi = report.second_largest_abs
    assert lo <= 5 <= hi
    assert _nontrivial_max_abs(rows, 15) <= 2 * math.sqrt(14)


def test_single_vertex_is_trivially_ramanujan() -> None:
    report = ramanujan_verdict([[15]])
    assert report.ramanujan is True
    assert report.second_largest_abs is None


def test_symmetrizing_weights() -> None:
    w = symmetrizing_weights(AD_2_2_11)
    assert w is not None
    assert all(w[j] * AD_2_2_11[i][j] == w[i] * AD_2_2_11[j][i] for i in range(5) for j in range(5))
    assert symmetrizing_weights([[1, 1], [0, 2]]) is None


def test_verdict_rejects_uncertifiable_matrices() -> None:
    with pytest.raises(SpectralError):
        ramanujan_verdict([[1, 2], [3, 4]])
    with pytest.raises(SpectralError):
        ramanujan_verdict([[1, 1], [0, 2]])
    with pytest.raises(SpectralError):
        ramanujan_verdict([[1, 0], [0, 1]])
    with pytest.raises(SpectralError):
        ramanujan_verdict([[11, 4], [6, 9]], k=14)


def test_sturm_counts() -> None:
    f = as_poly(_coeffs(x**2 - 2))
    assert count_real_roots(f, 0, 2) == 1
    assert count_real_roots(f, -2, 2) == 2
    g = as_poly(_coeffs((x - 1) ** 2 * (x + 3)))
    assert roots_in_interval(g, 0, 2) == 2
    assert roots_in_interval(g, -4, 2) == 3
    # boundary root at the closed end is counted, at the open end it is not
    h = as_poly(_coeffs((x - 1) * (x - 3)))
    assert count_real_roots(h, 1, 3) == 1


def test_survey_csv_layout() -> None:
    rows = [
        SurveyRow(g=2, ell=2, p=3, h=1, k=15, ramanujan=True, charpoly="x - 15"),
        SurveyRow(g=2, ell=2, p=5, error="ClassEnumerationError: ceiling"),
    ]
    lines = survey_to_csv(rows).splitlines()
    assert lines[0].split(",") == SURVEY_COLUMNS
    assert lines[1].startswith("2,2,3,1,15,true,")
    assert "error" in lines[2]


@pytest.mark.skipif(not slow_tests_enabled(), reason="surveys are slow (set QUATBRANDT_RUN_SLOW_TESTS=1).")
def test_survey_2_2_up_to_13() -> None:
    rows = ramanujan_survey(2, 2, range(2, 14))
    assert [r.p for r in rows] == [3, 5, 7, 11, 13]
    assert all(r.error is None for r in rows)
    assert {r.p for r in rows if r.ramanujan} == {3, 5, 7}
    for r in rows:
        B = get_workbench(2, r.p).brandt(2)
        report = ramanujan_verdict(B)
        assert report.ramanujan == r.ramanujan
        _assert_float_oracle_agrees(B.entries, report)
        if report.h > 1:
            v = _nontrivial_max_abs(B.entries, report.degree)
            assert float(r.second_largest_abs_lo) - 1e-9 <= v <= float(r.second_largest_abs_hi) + 1e-9


def test_big_graph_2_2_11_through_the_pipeline() -> None:
    G = big_graph(2, 2, 11, workbench=get_workbench(2, 11))
    Ad = G.adjacency()
    assert consistent_permutation([(Ad, AD_2_2_11)])
    expected = _coeffs((x - 15) * (x**2 - 14 * x + 46) * (x**2 + 6 * x + 6))
    assert char_poly(get_workbench(2, 11).brandt(2)) == expected
    assert char_poly(Ad) == expected
    report = ramanujan_verdict(Ad)
    assert report.verdict == "NOT RAMANUJAN"
    _assert_float_oracle_agrees(Ad, report)


def _check_verdict(g: int, ell: int, p: int, ramanujan: bool) -> None:
    B = get_workbench(g, p).brandt(ell)
    report = get_workbench(g, p).spectral(ell)
    assert report.degree == hecke_degree(g, ell)
    assert report.ramanujan is ramanujan
    _assert_float_oracle_agrees(B.entries, report)


@pytest.mark.parametrize(
    "g,ell,p,ramanujan",
    [(2, 2, 3, True), (2, 2, 5, True), (2, 2, 7, True), (2, 3, 7, True), (2, 2, 11, False)],
)
def test_ramanujan_verdicts(g: int, ell: int, p: int, ramanujan: bool) -> None:
    _check_verdict(g, ell, p, ramanujan)


@pytest.mark.skipif(not slow_tests_enabled(), reason="g=3 and larger-level verdicts are slow (set QUATBRANDT_RUN_SLOW_TESTS=1).")
@pytest.mark.parametrize(
    "g,ell,p,ramanujan",
    [(2, 3, 11, False), (2, 2, 13, False), (3, 2, 3, True), (2, 3, 2, True), (2, 5, 3, True), (3, 3, 2, True)],
)
def test_ramanujan_verdicts_slow(g: int, ell: int, p: int, ramanujan: bool) -> None:
    _check_verdict(g, ell, p, ramanujan)


@pytest.mark.parametrize("g,p", [(2, 2), (2, 3)])
def test_single_class_dimensions_are_trivially_ramanujan(g: int, p: int) -> None:
    assert get_workbench(g, p).class_set.h == 1
    for ell in (2, 3, 5):
        if ell == p:
            continue
        report = ramanujan_verdict([[hecke_degree(g, ell)]])
        assert report.ramanujan is True
        assert report.second_largest_abs is None


@pytest.mark.skipif(not slow_tests_enabled(), reason="g=3 class sets are slow (set QUATBRANDT_RUN_SLOW_TESTS=1).")
def test_g3_p2_is_a_single_class() -> None:
    assert get_workbench(3, 2).class_set.h == 1
    for ell in (3, 5):
        assert ramanujan_verdict([[hecke_degree(3, ell)]]).ramanujan is True
