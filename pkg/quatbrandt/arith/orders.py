from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import isqrt
from typing import Sequence

import numpy as np

from quatbrandt.arith.linalg import int_det, lattice_basis, rational_inverse
from quatbrandt.arith.quaternion import QuaternionAlgebra, QuaternionElement
from quatbrandt.errors import OrderError
from quatbrandt.forms.lattice import QuadraticLattice


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise OrderError(f"{what} is not integral: {x}")
    return int(x)


class MaximalOrder:
    """A Z-order of rank 4 with basis normalized so that basis[0] = 1.

    Besides the quaternion basis the order carries its arithmetic in
    order coordinates (integer 4-vectors):

    - ``structure[r, s, t]``: b_r * b_s = sum_t structure[r, s, t] b_t
    - ``conjugation[u, r]``: conj(b_r) = sum_u conjugation[u, r] b_u
    - ``traces[t]`` = trd(b_t)
    - ``trace_form[r, s]`` = trd(b_r * conj(b_s)), so nrd(x) = x^T T x / 2
    """

    def __init__(self, algebra: QuaternionAlgebra, basis: Sequence[QuaternionElement], *, expected_discriminant: int | None = None) -> None:
        self.algebra = algebra
        coords = lattice_basis([b.coeffs for b in basis], 4)
        unit_col = next((c for c, v in enumerate(coords) if not any(v[1:])), None)
        if unit_col is None or coords[unit_col][0] != 1:
            raise OrderError("lattice does not contain 1 as a basis vector")
        ordered = (coords[unit_col],) + tuple(v for c, v in enumerate(coords) if c != unit_col)
        self.basis: tuple[QuaternionElement, ...] = tuple(algebra.element(v) for v in ordered)
        # columns of _to_std are the basis vectors in (1, i, j, k) coordinates
        to_std = [[ordered[c][r] for c in range(4)] for r in range(4)]
        self._from_std = rational_inverse(to_std)

        C = np.zeros((4, 4, 4), dtype=np.int64)
        for r, br in enumerate(self.basis):
            for s, bs in enumerate(self.basis):
                prod = self.coordinates(br * bs)
                for t in range(4):
                    C[r, s, t] = _as_int(prod[t], f"coordinate of b{r}*b{s}")
        K = np.zeros((4, 4), dtype=np.int64)
        for r, br in enumerate(self.basis):
            conj = self.coordinates(br.conjugate())
            for u in range(4):
                K[u, r] = _as_int(conj[u], f"conj(b{r})")
        self.structure = C
        self.conjugation = K
        self.traces = np.array([_as_int(b.reduced_trace(), "trace") for b in self.basis], dtype=np.int64)
        self.trace_form = np.array(
            [[_as_int((br * bs.conjugate()).reduced_trace(), "trace form") for bs in self.basis] for br in self.basis],
            dtype=np.int64,
        )
        for b in self.basis:
            _as_int(b.reduced_norm(), "reduced norm")

        d = abs(int_det(self.trace_form.tolist()))
        root = isqrt(d)
        if root * root != d:
            raise OrderError(f"trace-form determinant {d} is not a square")
        self.discriminant = root
        if expected_discriminant is not None and root != expected_discriminant:
            raise OrderError(f"reduced discriminant {root}, expected {expected_discriminant}")

    def __repr__(self) -> str:
        gens = ", ".join(str(b) for b in self.basis)
        return f"MaximalOrder(({self.algebra.a},{self.algebra.b}), <{gens}>)"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MaximalOrder) and self.algebra == other.algebra and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.algebra, self.basis))

    # -- element <-> coordinates -------------------------------------------------

    def coordinates(self, x: QuaternionElement) -> tuple[Fraction, ...]:
        return tuple(sum((self._from_std[t][c] * x.coeffs[c] for c in range(4)), Fraction(0)) for t in range(4))

    def integral_coordinates(self, x: QuaternionElement) -> tuple[int, ...] | None:
        c = self.coordinates(x)
        if any(v.denominator != 1 for v in c):
            return None
        return tuple(int(v) for v in c)

    def contains(self, x: QuaternionElement) -> bool:
        return self.integral_coordinates(x) is not None

    def element(self, coords: Sequence[int]) -> QuaternionElement:
        out = self.algebra.scalar(0)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(int(c))
        return out

    # -- arithmetic in order coordinates ---------------------------------------

    def multiply_coords(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("r,s,rst->t", np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64), self.structure)

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """L with L @ y = coordinates of x*y."""
        return np.einsum("r,rst->ts", np.asarray(x, dtype=np.int64), self.structure)

    def conjugate_coords(self, x: np.ndarray) -> np.ndarray:
        return self.conjugation @ np.asarray(x, dtype=np.int64)

    def norm_coords(self, x: np.ndarray) -> int:
        v = np.asarray(x, dtype=np.int64)
        return int(v @ self.trace_form @ v) // 2

    @cached_property
    def one(self) -> np.ndarray:
        e = np.zeros(4, dtype=np.int64)
        e[0] = 1
        return e

    @cached_property
    def hermitian_tensor(self) -> np.ndarray:
        """A[r, v, s] = trd(conj(b_r) * b_v * b_s); trace Gram blocks contract it with an entry."""
        C, K, tau = self.structure, self.conjugation, self.traces
        return np.einsum("ur,uvw,wst,t->rvs", K, C, C, tau)

    def norm_lattice(self) -> QuadraticLattice:
        return QuadraticLattice.from_array(self.trace_form)

    @cached_property
    def _units(self) -> tuple[tuple[int, ...], ...]:
        from quatbrandt.enumeration.short_vectors import short_vectors

        return tuple(short_vectors(self.norm_lattice(), 1))

    def units(self) -> list[tuple[int, ...]]:
        """Coordinates of every x in O with nrd(x) = 1 (the full unit group, -1 included)."""
        return list(self._units)

    def unit_count(self) -> int:
        return len(self._units)


def _order_generators(A: QuaternionAlgebra) -> list[QuaternionElement]:
    p = A.p
    one, i, j, k = A.one, A.i, A.j, A.k
    half, quarter = Fraction(1, 2), Fraction(1, 4)
    if p == 2:
        return [one, i, j, (one + i + j + k).scale(half)]
    if p is not None and p % 4 == 3:
        return [one, i, (one + j).scale(half), (i + k).scale(half)]
    if p is not None and p % 8 == 5:
        return [(one + j + k).scale(half), (i + j.scale(2) + k).scale(quarter), j, k]
    if p is not None and p % 8 == 1:
        q = -A.a
        c = next(c for c in range(q) if (c * c * p + 1) % q == 0)
        return [(one + i).scale(half), (j - k).scale(half), (i - k.scale(c)).scale(Fraction(1, q)), k]
    raise OrderError(f"no explicit maximal order recipe for ({A.a},{A.b})")


def maximal_order(A: QuaternionAlgebra) -> MaximalOrder:
    """Explicit maximal order of H_p for the algebra produced by ``algebra_for_prime``."""
    if A.p is None:
        raise OrderError("maximal_order needs an algebra built by algebra_for_prime")
    return MaximalOrder(A, _order_generators(A), expected_discriminant=A.p)
