from __future__ import annotations

from collections import deque
from fractions import Fraction

from sympy import nextprime

from quatbrandt.arith.orders import MaximalOrder
from quatbrandt.classes.classset import ClassSet
from quatbrandt.classes.ideals import IdealLattice, ideal_equivalent, left_order, neighbors
from quatbrandt.classes.mass import mass
from quatbrandt.errors import ClassEnumerationError, ClassSetError
from quatbrandt.logging import get_logger

logger = get_logger("quatbrandt.classes")


def neighbor_prime(p: int) -> int:
    q = 2
    while q == p:
        q = nextprime(q)
    return q


def right_ideal_classes(order: MaximalOrder, *, theta_length: int | None = None) -> ClassSet:
    """Right ideal classes of O by breadth-first q-neighbour expansion, stopped by the Eichler mass."""
    if theta_length is None:
        from quatbrandt.runtime.settings import get_settings

        theta_length = get_settings().THETA_PREFIX_LENGTH
    p = order.algebra.p
    if p is None:
        raise ClassEnumerationError("ideal classes need an algebra built by algebra_for_prime")
    target = mass(1, p)
    q = neighbor_prime(p)

    start = IdealLattice.unit_ideal(order)
    found: list[tuple[tuple[int, ...], int, IdealLattice, int]] = []  # (theta, discovery, ideal, units)
    total = Fraction(0)

    def admit(I: IdealLattice) -> bool:
        nonlocal total
        theta = I.theta_prefix(theta_length)
        for th, _, J, _ in found:
            if th == theta and ideal_equivalent(I, J):
                return False
        e = left_order(I).unit_count()
        found.append((theta, len(found), I, e))
        total += Fraction(1, e)
        logger.info("p=%d: class %d found (e=%d), mass %s of %s", p, len(found), e, total, target)
        return True

    admit(start)
    queue: deque[IdealLattice] = deque([start])
    while total < target and queue:
        I = queue.popleft()
        for J in neighbors(I, q):
            if admit(J):
                queue.append(J)
                if total >= target:
                    break
    if total > target:
        raise ClassSetError(f"p={p}: unit counts overshoot the mass ({total} > {target})")
    if total != target:
        raise ClassEnumerationError(f"p={p}: {q}-neighbour search exhausted at mass {total} < {target}")

    # theta prefix, then the sorted Gram, then discovery order
    found.sort(key=lambda row: (row[0], row[2].quadratic_lattice().canonical_bytes(), row[1]))
    return ClassSet(
        g=1,
        p=p,
        order=order,
        reps=tuple(row[2] for row in found),
        aut_counts=tuple(row[3] for row in found),
        mass_target=target,
    )
