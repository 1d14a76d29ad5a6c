from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Sequence, Union

from sympy import ZZ, Poly, Rational, Symbol, sqf_list, sturm
from sympy.polys.matrices import DomainMatrix

from quatbrandt.brandt.matrices import BrandtMatrix
from quatbrandt.errors import SpectralError

x = Symbol("x")

MatrixLike = Union[BrandtMatrix, Sequence[Sequence[int]]]


def matrix_rows(B: MatrixLike) -> list[list[int]]:
    rows = B.entries if isinstance(B, BrandtMatrix) else B
    out = [[int(v) for v in r] for r in rows]
    if any(len(r) != len(out) for r in out):
        raise SpectralError("matrix is not square")
    return out


def symmetrizing_weights(rows: Sequence[Sequence[int]]) -> tuple[Fraction, ...] | None:
    """Positive w with w_j B_ij = w_i B_ji, or None if no such weights exist."""
    h = len(rows)
    w: list[Fraction | None] = [None] * h
    for root in range(h):
        if w[root] is not None:
            continue
        w[root] = Fraction(1)
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(h):
                if rows[i][j] == 0 and rows[j][i] == 0:
                    continue
                if rows[i][j] == 0 or rows[j][i] == 0:
                    return None
                wj = w[i] * Fraction(rows[j][i], rows[i][j])  # type: ignore[operator]
                if w[j] is None:
                    w[j] = wj
                    queue.append(j)
                elif w[j] != wj:
                    return None
    return tuple(w)  # type: ignore[arg-type]


def is_weighted_symmetric(rows: Sequence[Sequence[int]], weights: Sequence[Fraction | int]) -> bool:
    h = len(rows)
    return all(weights[j] * rows[i][j] == weights[i] * rows[j][i] for i in range(h) for j in range(h))


def char_poly(B: MatrixLike, weights: Sequence[Fraction | int] | None = None) -> list[int]:
    """det(x I - B) as integer coefficients, leading first.

    The matrix must be weighted-symmetric (similar to a symmetric matrix), which
    is what makes every root real; Brandt matrices bring their own weights,
    plain matrices get them solved for.
    """
    rows = matrix_rows(B)
    if weights is None and isinstance(B, BrandtMatrix):
        weights = B.weights
    if weights is None:
        weights = symmetrizing_weights(rows)
        if weights is None:
            raise SpectralError("matrix admits no symmetrizing weights")
    if not is_weighted_symmetric(rows, weights):
        raise SpectralError("weighted symmetry e_j B_ij = e_i B_ji fails")
    return [int(c) for c in DomainMatrix.from_list(rows, ZZ).charpoly()]


def as_poly(coeffs: Sequence[int]) -> Poly:
    return Poly(list(coeffs), x, domain=ZZ)


def _sign_changes(seq: list[Poly], point: Rational) -> int:
    signs = [s for s in (p.eval(point) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots(f: Poly, lo: Fraction | int, hi: Fraction | int) -> int:
    """Distinct real roots of f in (lo, hi] by a Sturm sequence (f(lo) != 0 assumed)."""
    if f.degree() < 1:
        return 0
    seq = sturm(f)
    a, b = Rational(Fraction(lo).numerator, Fraction(lo).denominator), Rational(Fraction(hi).numerator, Fraction(hi).denominator)
    return _sign_changes(seq, a) - _sign_changes(seq, b)


def roots_in_interval(f: Poly, lo: Fraction | int, hi: Fraction | int) -> int:
    """Real roots of f in (lo, hi] counted with multiplicity, via the square-free factorization."""
    _, factors = sqf_list(f)
    return sum(mult * count_real_roots(Poly(fac, x), lo, hi) for fac, mult in factors)


def root_bound(f: Poly) -> Fraction:
    """Cauchy bound: every complex root has |z| < 1 + max |a_i / a_n|."""
    coeffs = [int(c) for c in f.all_coeffs()]
    lead = abs(coeffs[0])
    return 1 + max((Fraction(abs(c), lead) for c in coeffs[1:]), default=Fraction(0))


def real_root_count(coeffs: Sequence[int]) -> int:
    f = as_poly(coeffs)
    if f.degree() < 1:
        return 0
    M = root_bound(f)
    return roots_in_interval(f, -M - 1, M)


def root_multiplicity(coeffs: Sequence[int], value: int) -> int:
    f = as_poly(coeffs)
    lin = as_poly([1, -value])
    m = 0
    while f.degree() >= 1 and f.eval(value) == 0:
        f = f.exquo(lin)
        m += 1
    return m


def nontrivial_factor(coeffs: Sequence[int], k: int) -> Poly:
    """charpoly / (x - k), exact."""
    f = as_poly(coeffs)
    q, r = f.div(as_poly([1, -k]))
    if not r.is_zero:
        raise SpectralError(f"{k} is not an eigenvalue")
    return q
