import os

os.environ.setdefault("QUATBRANDT_ENABLE_DISK_CACHE", "0")

from fractions import Fraction  # noqa: E402

import pytest  # noqa: E402

from quatbrandt.arith.matrices import OrderMatrix  # noqa: E402
from quatbrandt.arith.orders import maximal_order  # noqa: E402
from quatbrandt.arith.quaternion import algebra_for_prime  # noqa: E402
from quatbrandt.enumeration.isometry import (  # noqa: E402
    are_isometric,
    automorphism_group,
    count_isometries,
    isometry_solutions,
)
from quatbrandt.enumeration.orbits import group_generators, orbit_decomposition  # noqa: E402
from quatbrandt.enumeration.short_vectors import (  # noqa: E402
    short_vectors,
    theta_prefix,
    vectors_by_norm,
)
from quatbrandt.errors import OrbitError  # noqa: E402
from quatbrandt.forms.hermitian import HermitianForm  # noqa: E402
from quatbrandt.forms.lattice import QuadraticLattice  # noqa: E402

O7 = maximal_order(algebra_for_prime(7))


def test_short_vectors_of_sum_of_two_squares() -> None:
    L = QuadraticLattice(((2, 0), (0, 2)))
    assert short_vectors(L, 1) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert len(short_vectors(L, 5)) == 8
    assert short_vectors(L, 3) == []
    assert theta_prefix(L, 4) == (4, 4, 0, 4)


def test_scaled_lattice_values() -> None:
    L = QuadraticLattice(((2, 1), (1, 2)), Fraction(1, 3))
    # x^2 + xy + y^2 = 3 has six solutions, so Q = 1 after scaling by 1/3
    assert len(short_vectors(L, 1)) == 6
    for v in short_vectors(L, 1):
        assert L.value(v) == 1


def test_vectors_by_norm_excludes_zero_and_groups_shells() -> None:
    L = QuadraticLattice(((2, 0), (0, 2)))
    shells = vectors_by_norm(L, 2)
    assert sorted(shells) == [1, 2]
    assert len(shells[Fraction(1)]) == 4
    assert len(shells[Fraction(2)]) == 4


def test_lattice_must_be_even_and_symmetric() -> None:
    with pytest.raises(ValueError):
        QuadraticLattice(((1, 0), (0, 2)))
    with pytest.raises(ValueError):
        QuadraticLattice(((2, 1), (0, 2)))


def test_automorphisms_of_identity_form_are_monomial() -> None:
    H = HermitianForm.identity(O7, 2)
    auts = automorphism_group(H)
    # 2! permutations times 4 units per column
    assert len(auts) == 32
    assert count_isometries(H, H, 1) == 32
    assert count_isometries(H, H, 1, left_automorphisms=auts) == 32
    assert OrderMatrix.identity(O7, 2) in auts


def test_orbit_reduced_search_agrees_with_plain_search() -> None:
    H = HermitianForm.identity(O7, 2)
    auts = automorphism_group(H)
    plain = isometry_solutions(H, H, 2)
    reduced = isometry_solutions(H, H, 2, left_automorphisms=auts)
    assert plain == reduced
    assert count_isometries(H, H, 2, left_automorphisms=auts) == len(plain)
    for M in plain:
        assert M.dagger() @ M == OrderMatrix.scalar(O7, 2, 2)


def test_isometry_existence() -> None:
    H = HermitianForm.identity(O7, 2)
    assert are_isometric(H, H)
    assert not are_isometric(H, HermitianForm.diagonal(O7, [1, 2]))


def test_orbits_of_the_automorphism_group_on_itself() -> None:
    H = HermitianForm.identity(O7, 2)
    auts = automorphism_group(H)
    one = [OrderMatrix.identity(O7, 2)]
    left_only = orbit_decomposition(auts, auts, one, lambda a, b: a @ b)
    assert [o.size for o in left_only] == [32]
    assert left_only[0].stabilizer == 1
    both = orbit_decomposition(auts, auts, auts, lambda a, b: a @ b)
    assert len(both) == 1 and both[0].stabilizer == 32


def _mod7(a: int, b: int) -> int:
    return a * b % 7


def test_orbit_decomposition_on_units_mod_seven() -> None:
    orbits = orbit_decomposition([1, 2, 3, 4, 5, 6], [1, 6], [1], _mod7)
    assert [sorted(o.members) for o in orbits] == [[1, 6], [2, 5], [3, 4]]
    assert all(o.size == 2 and o.stabilizer == 1 for o in orbits)
    assert [o.representative for o in orbits] == [1, 2, 3]


def test_orbit_decomposition_rejects_bad_input() -> None:
    with pytest.raises(OrbitError):
        orbit_decomposition([1, 1], [1], [1], _mod7)
    with pytest.raises(OrbitError):
        orbit_decomposition([1, 2], [1, 6], [1], _mod7)


def test_group_generators_detects_non_groups() -> None:
    assert group_generators([1, 6], _mod7) == [1, 6]
    with pytest.raises(OrbitError):
        group_generators([1, 2], lambda a, b: a * b % 5)
