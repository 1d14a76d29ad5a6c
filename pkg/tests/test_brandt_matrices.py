import os

os.environ.setdefault("QUATBRANDT_ENABLE_DISK_CACHE", "0")

from fractions import Fraction  # noqa: E402

import pytest  # noqa: E402

from quatbrandt.brandt.matrices import (  # noqa: E402
    BrandtMatrix,
    BrandtRecord,
    brandt,
    brandt_zero,
    hecke_degree,
    matmul,
)
from quatbrandt.errors import InvalidInputError  # noqa: E402
from quatbrandt.runtime.workbench import get_workbench  # noqa: E402
from tests.matrix_helpers import consistent_permutation, slow_tests_enabled  # noqa: E402

G2_P7 = {
    2: [[11, 4], [6, 9]],
    3: [[28, 12], [18, 22]],
    5: [[112, 44], [66, 90]],
    11: [[928, 536], [804, 660]],
}

G1_P11 = {
    2: [[1, 2], [3, 0]],
    3: [[2, 2], [3, 1]],
    5: [[4, 2], [3, 3]],
    7: [[4, 4], [6, 2]],
}

G2_P11 = {
    2: [[3, 4, 4, 0, 4], [3, 6, 0, 6, 0], [3, 0, 3, 8, 1], [0, 3, 4, 8, 0], [9, 0, 3, 0, 3]],
    3: [[8, 8, 4, 16, 4], [6, 20, 0, 12, 2], [3, 0, 9, 22, 6], [6, 6, 11, 16, 1], [9, 6, 18, 6, 1]],
    5: [[36, 32, 36, 32, 20], [24, 42, 24, 60, 6], [27, 24, 41, 58, 6], [12, 30, 29, 78, 7], [45, 18, 18, 42, 33]],
    7: [[80, 80, 72, 128, 40], [60, 128, 48, 144, 20], [54, 48, 94, 172, 32], [48, 72, 86, 176, 18], [90, 60, 96, 108, 46]],
}

G3_P7 = {
    2: [[45, 36, 8, 32, 14], [18, 27, 6, 60, 24], [14, 21, 30, 14, 56], [4, 15, 1, 101, 14], [7, 24, 16, 56, 32]],
    3: [[208, 208, 0, 640, 64], [104, 184, 32, 640, 160], [0, 112, 112, 616, 280], [80, 160, 44, 676, 160], [32, 160, 80, 640, 208]],
}


def _table(g: int, p: int, levels) -> list[tuple]:
    wb = get_workbench(g, p)
    return [(wb.brandt(n).entries, expected) for n, expected in levels.items()]


def test_hecke_degree() -> None:
    assert hecke_degree(1, 2) == 3
    assert hecke_degree(2, 2) == 15
    assert hecke_degree(2, 3) == 40
    assert hecke_degree(3, 2) == 135


def test_g1_p7_is_a_single_class() -> None:
    wb = get_workbench(1, 7)
    assert wb.brandt(1).entries == ((1,),)
    for ell in (2, 3, 5, 11):
        assert wb.brandt(ell).entries == ((ell + 1,),)


def test_g1_p11_table() -> None:
    assert consistent_permutation(_table(1, 11, G1_P11))


def test_g2_p7_small_levels() -> None:
    assert consistent_permutation(_table(2, 7, {n: G2_P7[n] for n in (2, 3)}))


@pytest.mark.skipif(not slow_tests_enabled(), reason="large-n g=2 tables are slow (set QUATBRANDT_RUN_SLOW_TESTS=1).")
def test_g2_p7_full_table() -> None:
    assert consistent_permutation(_table(2, 7, G2_P7))


def test_g2_p11_level_two() -> None:
    assert consistent_permutation(_table(2, 11, {2: G2_P11[2]}))


@pytest.mark.skipif(not slow_tests_enabled(), reason="large-n g=2 tables are slow (set QUATBRANDT_RUN_SLOW_TESTS=1).")
def test_g2_p11_full_table() -> None:
    assert consistent_permutation(_table(2, 11, G2_P11))


@pytest.mark.skipif(not slow_tests_enabled(), reason="g=3 Brandt matrices are slow (set QUATBRANDT_RUN_SLOW_TESTS=1).")
def test_g3_p7_table() -> None:
    assert consistent_permutation(_table(3, 7, G3_P7))


def test_row_sums_and_weighted_symmetry() -> None:
    for g, p, ell in [(1, 11, 2), (1, 11, 3), (2, 7, 2), (2, 11, 2)]:
        B = get_workbench(g, p).brandt(ell)
        assert set(B.row_sums()) == {hecke_degree(g, ell)}, f"row sums of B_{g}({ell}) for p={p}"
        assert B.is_weighted_symmetric()


def test_level_one_is_the_identity() -> None:
    for g, p in [(1, 11), (2, 7)]:
        B = get_workbench(g, p).brandt(1)
        assert B.entries == tuple(tuple(int(i == j) for j in range(B.h)) for i in range(B.h))


def test_brandt_zero_is_inverse_automorphism_counts() -> None:
    classes = get_workbench(1, 11).class_set
    B0 = brandt_zero(1, 11, classes)
    assert all(row == tuple(Fraction(1, e) for e in classes.aut_counts) for row in B0)


def test_brandt_argument_checks() -> None:
    classes = get_workbench(1, 11).class_set
    with pytest.raises(InvalidInputError):
        brandt(1, 11, 0, classes)
    with pytest.raises(InvalidInputError):
        brandt(1, 7, 2, classes)


def test_brandt_record_and_csv() -> None:
    wb = get_workbench(1, 11)
    B = wb.brandt(3)
    record = BrandtRecord.model_validate_json(B.to_record(wb.class_set.fingerprint).model_dump_json())
    assert record.classset_fingerprint == wb.class_set.fingerprint
    assert BrandtMatrix.from_record(record) == B
    lines = B.to_csv().strip().splitlines()
    assert len(lines) == 2
    assert [sum(int(v) for v in line.split(",")) for line in lines] == [4, 4]


def test_matmul() -> None:
    assert matmul([[1, 2], [3, 4]], [[5, 6], [7, 8]]) == ((19, 22), (43, 50))
    assert matmul([], []) == ()
    B = get_workbench(2, 7).brandt(2)
    assert consistent_permutation([(B @ B, [[145, 80], [120, 105]])])


@pytest.mark.parametrize("g,p,n", [(1, 11, 3), (2, 7, 2)])
def test_thread_pool_gives_the_sequential_matrix(g: int, p: int, n: int) -> None:
    classes = get_workbench(g, p).class_set
    sequential = brandt(g, p, n, classes, workers=1)
    pooled = brandt(g, p, n, classes, workers=2)
    assert pooled.entries == sequential.entries
    assert pooled.weights == sequential.weights
