from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Generic, Hashable, Sequence, TypeVar

from quatbrandt.errors import OrbitError

T = TypeVar("T", bound=Hashable)


@dataclass(frozen=True)
class Orbit(Generic[T]):
    representative: T
    size: int
    stabilizer: int
    members: frozenset[T]


def _closure(gens: Sequence[T], multiply: Callable[[T, T], T]) -> set[T]:
    seen: set[T] = set(gens)
    frontier = list(gens)
    while frontier:
        nxt: list[T] = []
        for x in frontier:
            for s in gens:
                y = multiply(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def group_generators(group: Sequence[T], multiply: Callable[[T, T], T]) -> list[T]:
    """A small generating set, picked greedily in the order of ``group``."""
    gens: list[T] = []
    span: set[T] = set()
    for x in group:
        if x in span:
            continue
        gens.append(x)
        span = _closure(gens, multiply)
    if len(span) != len(set(group)):
        raise OrbitError("automorphism list is not closed under multiplication")
    return gens


def orbit_decomposition(
    solutions: Sequence[T],
    left_aut: Sequence[T],
    right_aut: Sequence[T],
    multiply: Callable[[T, T], T],
) -> list[Orbit[T]]:
    """Split ``solutions`` into orbits of M -> U * M * V (U in left_aut, V in right_aut).

    For M^dagger H_i M = n H_j the left factor is Aut(H_i) and the right factor
    Aut(H_j). A one-element group on either side turns that side off, so
    (identity, Aut(H_j)) gives the right-only (big edge) classes.
    Representatives are the first member in the order of ``solutions``;
    stabilizer = |left| * |right| / size.
    """
    universe = set(solutions)
    if len(universe) != len(solutions):
        raise OrbitError("solution list contains duplicates")
    left_gens = group_generators(left_aut, multiply)
    right_gens = group_generators(right_aut, multiply)
    total = len(left_aut) * len(right_aut)

    def neighbours(x: T) -> list[T]:
        return [multiply(U, x) for U in left_gens] + [multiply(x, V) for V in right_gens]

    assigned: set[T] = set()
    orbits: list[Orbit[T]] = []
    for m in solutions:
        if m in assigned:
            continue
        members = {m}
        frontier = [m]
        while frontier:
            nxt: list[T] = []
            for x in frontier:
                for y in neighbours(x):
                    if y not in universe:
                        raise OrbitError("group action does not stabilize the solution set")
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        if total % len(members):
            raise OrbitError(f"orbit size {len(members)} does not divide group order {total}")
        assigned |= members
        orbits.append(Orbit(m, len(members), total // len(members), frozenset(members)))
    return orbits
