from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class QuadraticLattice:
    """Integral Gram matrix G with scalar form Q(v) = scale * v^T G v / 2.

    ``gram`` is stored as nested tuples so the lattice stays hashable; ``array``
    is the int64 view used by enumeration.
    """

    gram: tuple[tuple[int, ...], ...]
    scale: Fraction = Fraction(1)
    array: np.ndarray = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        arr = np.array(self.gram, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("gram must be square")
        if not np.array_equal(arr, arr.T):
            raise ValueError("gram must be symmetric")
        if np.any(np.diagonal(arr) % 2):
            raise ValueError("gram must be even (diagonal = 2Q)")
        object.__setattr__(self, "array", arr)

    @classmethod
    def from_array(cls, gram: np.ndarray, scale: Fraction | int = 1) -> QuadraticLattice:
        return cls(tuple(tuple(int(x) for x in row) for row in np.asarray(gram)), Fraction(scale))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def value(self, v: object) -> Fraction:
        vec = np.asarray(v, dtype=np.int64)
        return self.scale * Fraction(int(vec @ self.array @ vec), 2)

    def canonical_bytes(self) -> bytes:
        """Big-endian bytes of the Gram with rows and columns sorted by (diagonal, sorted |row|).

        Ties keep their basis order, so this is a stable sort key rather than an
        isometry invariant.
        """
        arr = self.array
        rows = [(int(arr[i, i]), tuple(sorted(abs(int(x)) for x in arr[i]))) for i in range(self.rank)]
        perm = sorted(range(self.rank), key=lambda i: rows[i])
        return arr[np.ix_(perm, perm)].astype(">i8").tobytes()

    def scaled(self, factor: Fraction | int) -> QuadraticLattice:
        return QuadraticLattice(self.gram, self.scale * Fraction(factor))
