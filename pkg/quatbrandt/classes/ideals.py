from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from quatbrandt.arith.linalg import common_denominator, lattice_basis, lattice_index, rational_inverse
from quatbrandt.arith.orders import MaximalOrder
from quatbrandt.arith.quaternion import QuaternionElement
from quatbrandt.forms.lattice import QuadraticLattice


def _fraction_gcd(values: Iterable[Fraction]) -> Fraction:
    vals = [Fraction(v) for v in values if v != 0]
    num = reduce(gcd, (v.numerator for v in vals), 0)
    den = reduce(lcm, (v.denominator for v in vals), 1)
    return Fraction(num, den)


@dataclass(frozen=True)
class IdealLattice:
    """A full Z-lattice in H_p (normally a right O-ideal), stored by its canonical HNF basis."""

    order: MaximalOrder = field(compare=False, hash=False, repr=False)
    basis: tuple[QuaternionElement, ...]

    @classmethod
    def from_generators(cls, order: MaximalOrder, generators: Sequence[QuaternionElement]) -> IdealLattice:
        coords = lattice_basis([x.coeffs for x in generators], 4)
        return cls(order, tuple(order.algebra.element(v) for v in coords))

    @classmethod
    def unit_ideal(cls, order: MaximalOrder) -> IdealLattice:
        return cls.from_generators(order, order.basis)

    @cached_property
    def _from_std(self) -> list[list[Fraction]]:
        to_std = [[self.basis[c].coeffs[r] for c in range(4)] for r in range(4)]
        return rational_inverse(to_std)

    def coordinates(self, x: QuaternionElement) -> tuple[Fraction, ...]:
        inv = self._from_std
        return tuple(sum((inv[t][c] * x.coeffs[c] for c in range(4)), Fraction(0)) for t in range(4))

    def contains(self, x: QuaternionElement) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(x))

    def element(self, coords: Sequence[int]) -> QuaternionElement:
        out = self.order.algebra.scalar(0)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(int(c))
        return out

    @cached_property
    def trace_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple((x * y.conjugate()).reduced_trace() for y in self.basis) for x in self.basis)

    @cached_property
    def norm(self) -> Fraction:
        """Positive generator of the Z-module spanned by nrd(x), x in the lattice."""
        G = self.trace_gram
        coeffs = [G[r][r] / 2 for r in range(4)] + [G[r][s] for r in range(4) for s in range(r + 1, 4)]
        return _fraction_gcd(coeffs)

    def is_right_stable(self) -> bool:
        return all(self.contains(b * o) for b in self.basis for o in self.order.basis)

    def product(self, other: IdealLattice) -> IdealLattice:
        return IdealLattice.from_generators(self.order, [x * y for x in self.basis for y in other.basis])

    def conjugate(self) -> IdealLattice:
        return IdealLattice.from_generators(self.order, [x.conjugate() for x in self.basis])

    def left_scale(self, alpha: QuaternionElement) -> IdealLattice:
        return IdealLattice.from_generators(self.order, [alpha * x for x in self.basis])

    def index_in(self, outer: IdealLattice) -> Fraction:
        return lattice_index([b.coeffs for b in outer.basis], [b.coeffs for b in self.basis])

    def quadratic_lattice(self, *, normalized: bool = True) -> QuadraticLattice:
        """Norm form of the lattice, Q(x) = nrd(x) (divided by ``norm`` when normalized)."""
        G = self.trace_gram
        d = common_denominator(G[r][s] / 2 for r in range(4) for s in range(4))
        gram = tuple(tuple(int(G[r][s] * d) for s in range(4)) for r in range(4))
        scale = Fraction(1, d)
        if normalized:
            scale /= self.norm
        return QuadraticLattice(gram, scale)

    def theta_prefix(self, length: int) -> tuple[int, ...]:
        from quatbrandt.enumeration.short_vectors import theta_prefix

        return theta_prefix(self.quadratic_lattice(), length)

    def key(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(b.coeffs for b in self.basis)


def left_order(I: IdealLattice) -> MaximalOrder:
    """{x : x I in I}, computed as I * conj(I) / N(I)."""
    P = I.product(I.conjugate())
    scale = Fraction(1) / I.norm
    A = I.order.algebra
    return MaximalOrder(A, [b.scale(scale) for b in P.basis], expected_discriminant=A.p)


def ideal_equivalent(I: IdealLattice, J: IdealLattice) -> bool:
    """I = alpha J for some alpha, i.e. I * conj(J) has an element of norm N(I) N(J)."""
    from quatbrandt.enumeration.short_vectors import short_vectors

    L = I.product(J.conjugate())
    form = L.quadratic_lattice(normalized=False).scaled(Fraction(1) / (I.norm * J.norm))
    return bool(short_vectors(form, 1))


def neighbors(I: IdealLattice, q: int) -> list[IdealLattice]:
    """Right sub-ideals J with qI in J in I and [I : J] = q^2, as qI + alpha*O over alpha in I / qI."""
    seen: dict[tuple, IdealLattice] = {}
    scaled = [b.scale(q) for b in I.basis]
    for coeffs in itertools.product(range(q), repeat=4):
        if not any(coeffs):
            continue
        alpha = I.element(coeffs)
        J = IdealLattice.from_generators(I.order, scaled + [alpha * o for o in I.order.basis])
        if J.index_in(I) != q * q:
            continue
        seen.setdefault(J.key(), J)
    return list(seen.values())
