from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm
from typing import Any, Iterable, Sequence

from sympy import QQ, ZZ, Matrix
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.matrices import DomainMatrix


def as_fraction(x: Any) -> Fraction:
    # QQ elements (PythonMPQ or gmpy2.mpq) and ZZ elements both expose numerator/denominator.
    return Fraction(int(x.numerator), int(x.denominator))


def qq_matrix(rows: Sequence[Sequence[Any]]) -> DomainMatrix:
    def conv(e: Any) -> tuple[int, int]:
        f = Fraction(e)
        return (f.numerator, f.denominator)

    return DomainMatrix.from_list([[conv(e) for e in row] for row in rows], QQ)


def zz_matrix(rows: Sequence[Sequence[Any]]) -> DomainMatrix:
    return DomainMatrix.from_list([[int(e) for e in row] for row in rows], ZZ)


def int_det(rows: Sequence[Sequence[Any]]) -> int:
    if len(rows) == 0:
        return 1
    return int(zz_matrix(rows).det())


def rational_det(rows: Sequence[Sequence[Any]]) -> Fraction:
    if len(rows) == 0:
        return Fraction(1)
    return as_fraction(qq_matrix(rows).det())


def rational_inverse(rows: Sequence[Sequence[Any]]) -> list[list[Fraction]]:
    inv = qq_matrix(rows).inv()
    return [[as_fraction(e) for e in row] for row in inv.to_list()]


def leading_minors(rows: Sequence[Sequence[Any]]) -> list[Fraction]:
    n = len(rows)
    return [rational_det([list(r[:k]) for r in rows[:k]]) for k in range(1, n + 1)]


def common_denominator(values: Iterable[Any]) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if it is not a square."""
    if x < 0:
        return None
    num, den = x.numerator, x.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


def lattice_basis(generators: Sequence[Sequence[Any]], rank: int) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical Z-basis of the span of rational vectors.

    Generators are scaled to integers, reduced to column Hermite normal form
    and scaled back, so two generating sets of the same lattice give the same
    basis tuple.
    """
    gens = [tuple(Fraction(x) for x in v) for v in generators]
    if not gens:
        raise ValueError("lattice needs at least one generator")
    dim = len(gens[0])
    d = common_denominator(x for v in gens for x in v)
    m = Matrix(dim, len(gens), lambda r, c: int(gens[c][r] * d))
    h = hermite_normal_form(m)
    if h.shape[1] != rank:
        raise ValueError(f"generators span rank {h.shape[1]}, expected {rank}")
    return tuple(tuple(Fraction(int(h[r, c]), d) for r in range(dim)) for c in range(h.shape[1]))


def lattice_index(outer: Sequence[Sequence[Any]], inner: Sequence[Sequence[Any]]) -> Fraction:
    """Index [outer : inner] of two full-rank lattices given by basis vectors."""
    return abs(rational_det(inner) / rational_det(outer))
