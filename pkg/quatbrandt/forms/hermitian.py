from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np
from sympy import integer_nthroot

from quatbrandt.arith.linalg import leading_minors
from quatbrandt.arith.matrices import OrderMatrix
from quatbrandt.arith.orders import MaximalOrder
from quatbrandt.arith.quaternion import QuaternionElement
from quatbrandt.errors import HauptNormError, InvalidInputError
from quatbrandt.forms.lattice import QuadraticLattice


@dataclass(frozen=True)
class HermitianForm:
    """g x g hermitian matrix over O (H^dagger = H, integral diagonal)."""

    matrix: OrderMatrix

    def __post_init__(self) -> None:
        m = self.matrix
        if not np.array_equal(m.dagger().array(), m.array()):
            raise InvalidInputError("matrix is not hermitian")

    @classmethod
    def from_elements(cls, order: MaximalOrder, rows: Sequence[Sequence[QuaternionElement]]) -> HermitianForm:
        return cls(OrderMatrix.from_elements(order, rows))

    @classmethod
    def identity(cls, order: MaximalOrder, g: int) -> HermitianForm:
        return cls(OrderMatrix.identity(order, g))

    @classmethod
    def diagonal(cls, order: MaximalOrder, values: Sequence[int]) -> HermitianForm:
        g = len(values)
        arr = np.zeros((g, g, 4), dtype=np.int64)
        for k, d in enumerate(values):
            arr[k, k, 0] = int(d)
        return cls(OrderMatrix.from_array(order, arr))

    @property
    def order(self) -> MaximalOrder:
        return self.matrix.order

    @property
    def g(self) -> int:
        return self.matrix.g

    def diagonal_entries(self) -> list[int]:
        arr = self.matrix.array()
        return [int(arr[k, k, 0]) for k in range(self.g)]

    def entry(self, k: int, l: int) -> QuaternionElement:
        return self.matrix.entry(k, l)

    def key(self) -> tuple[int, ...]:
        return self.matrix.entries

    @cached_property
    def gram(self) -> QuadraticLattice:
        return trace_gram(self, self.order)

    def value(self, v: Sequence[int]) -> Fraction:
        """v^dagger H v for a column v in O^g (flattened order coordinates)."""
        return self.gram.value(v)

    def inverse_coords(self) -> list[list[list[Fraction]]]:
        return self.matrix.inverse_coords()

    def inverse(self) -> OrderMatrix | None:
        return self.matrix.inverse()


def trace_gram(H: HermitianForm, order: MaximalOrder) -> QuadraticLattice:
    """Gram of B(u, v) = trd(u^dagger H v) on the Z-basis of O^g."""
    g = H.g
    A = order.hermitian_tensor
    arr = H.matrix.array()
    # block (k, l)[r, s] = trd(conj(b_r) H_kl b_s)
    blocks = np.einsum("rvs,klv->krls", A, arr)
    return QuadraticLattice.from_array(blocks.reshape(4 * g, 4 * g))


def is_positive_definite(H: HermitianForm) -> bool:
    return all(m > 0 for m in leading_minors(H.gram.array.tolist()))


def _q_matrix(H: HermitianForm) -> list[list[QuaternionElement]]:
    return [[H.entry(k, l) for l in range(H.g)] for k in range(H.g)]


def moore_determinant(rows: Sequence[Sequence[QuaternionElement]]) -> Fraction:
    """Moore determinant of a hermitian matrix over H by pivoting on a nonzero diagonal entry.

    Mdet(H) = h_kk * Mdet(S) with S the Schur complement H' - h_kk^-1 * c * c^dagger
    (h_kk is rational, so the skew-field elimination stays hermitian).
    """
    g = len(rows)
    if g == 0:
        return Fraction(1)
    diag = [rows[k][k].coeffs[0] for k in range(g)]
    pivot = next((k for k in range(g) if diag[k] != 0), None)
    if pivot is None:
        if any(not rows[k][l].is_zero() for k in range(g) for l in range(g)):
            raise HauptNormError("indefinite matrix with zero diagonal")
        return Fraction(0)
    h = diag[pivot]
    rest = [k for k in range(g) if k != pivot]
    schur = [
        [rows[k][l] - (rows[k][pivot] * rows[pivot][l]).scale(Fraction(1) / h) for l in rest]
        for k in rest
    ]
    return h * moore_determinant(schur)


def haupt_norm(H: HermitianForm, *, cross_check_max_g: int | None = None) -> int:
    """HNm(H): the nonnegative fourth root of det of the regular representation of H."""
    det = H.matrix.regular_determinant()
    if det < 0:
        raise HauptNormError(f"regular determinant {det} is negative")
    root, exact = integer_nthroot(det, 4)
    if not exact:
        raise HauptNormError(f"regular determinant {det} is not a fourth power")
    if cross_check_max_g is None:
        from quatbrandt.runtime.settings import get_settings

        cross_check_max_g = get_settings().MOORE_CROSS_CHECK_MAX_G
    if H.g <= cross_check_max_g:
        moore = moore_determinant(_q_matrix(H))
        if moore != int(root):
            raise HauptNormError(f"Moore expansion {moore} disagrees with regular representation {root}")
    return int(root)


def transform(H: HermitianForm, U: OrderMatrix) -> HermitianForm:
    """U^dagger H U."""
    return HermitianForm(U.dagger() @ H.matrix @ U)
