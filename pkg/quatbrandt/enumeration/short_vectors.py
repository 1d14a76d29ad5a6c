from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import ceil, floor, isqrt

import numpy as np

from quatbrandt.arith.linalg import rational_sqrt
from quatbrandt.forms.lattice import QuadraticLattice

Vector = tuple[int, ...]


def _decompose(gram: np.ndarray) -> list[list[Fraction]]:
    """Exact square completion Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2 of Q = x^T G x / 2."""
    n = gram.shape[0]
    q = [[Fraction(int(gram[i, j]), 2) for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("lattice is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _window(center: Fraction, radius_sq: Fraction) -> range:
    s = isqrt(radius_sq.numerator // radius_sq.denominator) + 1
    return range(ceil(center - s), floor(center + s) + 1)


def _fincke_pohst(L: QuadraticLattice, bound: Fraction, exact: bool) -> list[Vector]:
    """All x with Q(x) <= bound (or == bound when ``exact``), Q in unscaled units."""
    if bound < 0:
        return []
    q = _decompose(L.array)
    n = L.rank
    x = [0] * n
    out: list[Vector] = []

    def rec(i: int, remaining: Fraction) -> None:
        center = -sum((q[i][j] * x[j] for j in range(i + 1, n) if x[j]), Fraction(0))
        r = remaining / q[i][i]
        if i == 0 and exact:
            root = rational_sqrt(r)
            if root is None:
                return
            for cand in sorted({center - root, center + root}):
                if cand.denominator == 1:
                    x[0] = int(cand)
                    out.append(tuple(x))
            x[0] = 0
            return
        for xi in _window(center, r):
            d = xi - center
            used = q[i][i] * d * d
            if used > remaining:
                continue
            x[i] = xi
            if i == 0:
                out.append(tuple(x))
            else:
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, bound)
    return out


def short_vectors(L: QuadraticLattice, target: Fraction | int) -> list[Vector]:
    """Every v with Q(v) = target (both v and -v), in lexicographic order."""
    t = Fraction(target) / L.scale
    if t <= 0:
        return []
    return sorted(_fincke_pohst(L, t, exact=True))


def short_vector_array(L: QuadraticLattice, target: Fraction | int) -> np.ndarray:
    vecs = short_vectors(L, target)
    if not vecs:
        return np.zeros((0, L.rank), dtype=np.int64)
    return np.array(vecs, dtype=np.int64)


def vectors_by_norm(L: QuadraticLattice, bound: Fraction | int) -> dict[Fraction, list[Vector]]:
    """Nonzero vectors with 0 < Q(v) <= bound, grouped by Q(v)."""
    t = Fraction(bound) / L.scale
    shells: dict[Fraction, list[Vector]] = defaultdict(list)
    for v in _fincke_pohst(L, t, exact=False):
        if any(v):
            shells[L.value(v)].append(v)
    return {m: sorted(vs) for m, vs in sorted(shells.items())}


def theta_prefix(L: QuadraticLattice, length: int) -> tuple[int, ...]:
    """Representation counts #{v : Q(v) = m} for m = 1..length."""
    shells = vectors_by_norm(L, length)
    return tuple(len(shells.get(Fraction(m), ())) for m in range(1, length + 1))
