from __future__ import annotations

from functools import cached_property
from typing import Any, Hashable, Protocol, TypeVar

from quatbrandt.arith.matrices import OrderMatrix
from quatbrandt.arith.quaternion import QuaternionElement
from quatbrandt.classes.classset import ClassSet
from quatbrandt.classes.ideals import IdealLattice, left_order
from quatbrandt.enumeration.isometry import automorphism_group, count_isometries, isometry_solutions
from quatbrandt.enumeration.short_vectors import short_vectors
from quatbrandt.errors import ClassSetError, GraphError
from quatbrandt.forms.hermitian import HermitianForm
from quatbrandt.forms.lattice import QuadraticLattice

T = TypeVar("T", bound=Hashable)


class VertexBackend(Protocol[T]):
    """Edge data between class representatives i -> j at level n."""

    classes: ClassSet

    def count(self, i: int, j: int, n: int) -> int: ...

    def solutions(self, i: int, j: int, n: int) -> list[T]: ...

    def automorphisms(self, i: int) -> list[T]: ...

    def identity(self, i: int) -> T: ...

    def multiply(self, x: T, y: T) -> T: ...

    def dual(self, i: int, j: int, n: int, x: T) -> T: ...


class IdealBackend:
    """g = 1: edges i -> j are mu in I_i * conj(I_j) with nrd(mu) = n * N(I_i) N(I_j)."""

    def __init__(self, classes: ClassSet) -> None:
        if classes.g != 1:
            raise ClassSetError("IdealBackend needs a g=1 class set")
        self.classes = classes
        self.reps: tuple[IdealLattice, ...] = classes.reps  # type: ignore[assignment]
        self._edges: dict[tuple[int, int], tuple[IdealLattice, QuadraticLattice]] = {}

    def _edge(self, i: int, j: int) -> tuple[IdealLattice, QuadraticLattice]:
        if (i, j) not in self._edges:
            Ii, Ij = self.reps[i], self.reps[j]
            L = Ii.product(Ij.conjugate())
            form = L.quadratic_lattice(normalized=False).scaled(1 / (Ii.norm * Ij.norm))
            self._edges[(i, j)] = (L, form)
        return self._edges[(i, j)]

    def count(self, i: int, j: int, n: int) -> int:
        return len(short_vectors(self._edge(i, j)[1], n))

    def solutions(self, i: int, j: int, n: int) -> list[QuaternionElement]:
        L, form = self._edge(i, j)
        return [L.element(v) for v in short_vectors(form, n)]

    @cached_property
    def _units(self) -> list[list[QuaternionElement]]:
        out = []
        for I in self.reps:
            O_i = left_order(I)
            out.append([O_i.element(u) for u in O_i.units()])
        got = tuple(len(u) for u in out)
        if got != self.classes.aut_counts:
            raise ClassSetError(f"left-order unit counts {got} differ from the class set {self.classes.aut_counts}")
        return out

    def automorphisms(self, i: int) -> list[QuaternionElement]:
        return self._units[i]

    def identity(self, i: int) -> QuaternionElement:
        return self.classes.order.algebra.one

    def multiply(self, x: QuaternionElement, y: QuaternionElement) -> QuaternionElement:
        return x * y

    def dual(self, i: int, j: int, n: int, x: QuaternionElement) -> QuaternionElement:
        return x.conjugate()


class HermitianBackend:
    """g >= 2: edges i -> j are M with M^dagger H_i M = n H_j."""

    def __init__(self, classes: ClassSet) -> None:
        if classes.g < 2:
            raise ClassSetError("HermitianBackend needs a g>=2 class set")
        self.classes = classes
        self.reps: tuple[HermitianForm, ...] = classes.reps  # type: ignore[assignment]
        self._auts: dict[int, list[OrderMatrix]] = {}
        self._inverses: dict[int, OrderMatrix] = {}

    def automorphisms(self, i: int) -> list[OrderMatrix]:
        if i not in self._auts:
            auts = automorphism_group(self.reps[i])
            if len(auts) != self.classes.aut_counts[i]:
                raise ClassSetError(f"class {i}: |Aut| = {len(auts)} but the class set records {self.classes.aut_counts[i]}")
            self._auts[i] = auts
        return self._auts[i]

    def count(self, i: int, j: int, n: int) -> int:
        return count_isometries(self.reps[i], self.reps[j], n, left_automorphisms=self.automorphisms(i))

    def solutions(self, i: int, j: int, n: int) -> list[OrderMatrix]:
        return isometry_solutions(self.reps[i], self.reps[j], n, left_automorphisms=self.automorphisms(i))

    def identity(self, i: int) -> OrderMatrix:
        return OrderMatrix.identity(self.classes.order, self.classes.g)

    def multiply(self, x: OrderMatrix, y: OrderMatrix) -> OrderMatrix:
        return x @ y

    def _inverse(self, j: int) -> OrderMatrix:
        if j not in self._inverses:
            inv = self.reps[j].inverse()
            if inv is None:
                raise GraphError(f"class {j}: H^-1 is not integral")
            self._inverses[j] = inv
        return self._inverses[j]

    def dual(self, i: int, j: int, n: int, x: OrderMatrix) -> OrderMatrix:
        """H_j^-1 M^dagger H_i (= n M^-1), an edge j -> i."""
        return self._inverse(j) @ x.dagger() @ self.reps[i].matrix


def make_backend(classes: ClassSet) -> Any:
    return IdealBackend(classes) if classes.g == 1 else HermitianBackend(classes)
