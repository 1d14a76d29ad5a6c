from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

import numpy as np

from quatbrandt.arith.linalg import int_det, rational_inverse
from quatbrandt.arith.orders import MaximalOrder
from quatbrandt.arith.quaternion import QuaternionElement


def matmul_coords(order: MaximalOrder, M: np.ndarray, N: np.ndarray) -> np.ndarray:
    """Product of (g, h, 4) and (h, m, 4) coordinate arrays over the order."""
    return np.einsum("ijr,jks,rst->ikt", M, N, order.structure)


def dagger_coords(order: MaximalOrder, M: np.ndarray) -> np.ndarray:
    return np.einsum("klr,ur->lku", M, order.conjugation)


def regular_representation_coords(order: MaximalOrder, M: np.ndarray) -> np.ndarray:
    """4g x 4g integer matrix of v -> M v on O^g (block (k, l) is left mult by M_kl)."""
    g = M.shape[0]
    # blocks[k, t, l, s] = L_{M_kl}[t, s]
    blocks = np.einsum("klr,rst->ktls", M, order.structure)
    return blocks.reshape(4 * g, 4 * g)


@dataclass(frozen=True)
class OrderMatrix:
    """A g x g matrix over a maximal order, entries in order coordinates.

    ``entries`` is the flattened (g, g, 4) integer array; equality and hashing
    use it, so matrices can live in sets and dict keys during orbit work.
    """

    order: MaximalOrder = field(compare=False, hash=False, repr=False)
    g: int
    entries: tuple[int, ...]

    @classmethod
    def from_array(cls, order: MaximalOrder, arr: np.ndarray) -> OrderMatrix:
        a = np.asarray(arr)
        if a.ndim != 3 or a.shape[0] != a.shape[1] or a.shape[2] != 4:
            raise ValueError(f"expected a (g, g, 4) array, got {a.shape}")
        return cls(order, int(a.shape[0]), tuple(int(x) for x in a.reshape(-1)))

    @classmethod
    def from_columns(cls, order: MaximalOrder, columns: Sequence[Sequence[int]]) -> OrderMatrix:
        """Columns given as flattened 4g vectors (component-major)."""
        g = len(columns)
        arr = np.array(columns, dtype=np.int64).reshape(g, g, 4).transpose(1, 0, 2)
        return cls.from_array(order, arr)

    @classmethod
    def from_elements(cls, order: MaximalOrder, rows: Sequence[Sequence[QuaternionElement]]) -> OrderMatrix:
        g = len(rows)
        arr = np.zeros((g, g, 4), dtype=np.int64)
        for k, row in enumerate(rows):
            for l, x in enumerate(row):
                coords = order.integral_coordinates(x)
                if coords is None:
                    raise ValueError(f"entry ({k},{l}) = {x} is not in the order")
                arr[k, l] = coords
        return cls.from_array(order, arr)

    @classmethod
    def identity(cls, order: MaximalOrder, g: int) -> OrderMatrix:
        return cls.scalar(order, g, 1)

    @classmethod
    def scalar(cls, order: MaximalOrder, g: int, c: int) -> OrderMatrix:
        arr = np.zeros((g, g, 4), dtype=np.int64)
        for k in range(g):
            arr[k, k, 0] = c
        return cls.from_array(order, arr)

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.g, self.g, 4)

    def entry(self, k: int, l: int) -> QuaternionElement:
        return self.order.element(self.array()[k, l])

    def column(self, l: int) -> np.ndarray:
        return self.array()[:, l, :].reshape(-1)

    def __matmul__(self, other: OrderMatrix) -> OrderMatrix:
        return OrderMatrix.from_array(self.order, matmul_coords(self.order, self.array(), other.array()))

    def __neg__(self) -> OrderMatrix:
        return OrderMatrix(self.order, self.g, tuple(-x for x in self.entries))

    def scale(self, c: int) -> OrderMatrix:
        return OrderMatrix(self.order, self.g, tuple(c * x for x in self.entries))

    def dagger(self) -> OrderMatrix:
        return OrderMatrix.from_array(self.order, dagger_coords(self.order, self.array()))

    def regular_representation(self) -> np.ndarray:
        return regular_representation_coords(self.order, self.array())

    def regular_determinant(self) -> int:
        return int_det(self.regular_representation().tolist())

    def reduced_norm(self) -> int:
        """Nrd(M), the square root of det of the regular representation (sign fixed positive)."""
        d = self.regular_determinant()
        root = isqrt(abs(d))
        if root * root != abs(d) or d < 0:
            raise ValueError(f"regular determinant {d} is not a square")
        return root

    def inverse_coords(self) -> list[list[list[Fraction]]]:
        """Rational order coordinates of M^-1 (read off M^-1 applied to the unit columns)."""
        g = self.g
        rinv = rational_inverse(self.regular_representation().tolist())
        out = [[[Fraction(0)] * 4 for _ in range(g)] for _ in range(g)]
        for l in range(g):
            src = 4 * l  # the coordinate vector of 1 in slot l
            for k in range(g):
                for t in range(4):
                    out[k][l][t] = rinv[4 * k + t][src]
        return out

    def inverse(self) -> OrderMatrix | None:
        """M^-1 when it is integral, else None."""
        coords = self.inverse_coords()
        flat: list[int] = []
        for row in coords:
            for ent in row:
                for x in ent:
                    if x.denominator != 1:
                        return None
                    flat.append(int(x))
        return OrderMatrix(self.order, self.g, tuple(flat))

    def key(self) -> tuple[int, ...]:
        return self.entries

    def __lt__(self, other: OrderMatrix) -> bool:
        return self.entries < other.entries
