from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from quatbrandt.arith.matrices import OrderMatrix, dagger_coords, matmul_coords
from quatbrandt.enumeration.short_vectors import short_vector_array
from quatbrandt.errors import InvalidInputError, OrbitError
from quatbrandt.forms.hermitian import HermitianForm, haupt_norm
from quatbrandt.logging import get_logger

logger = get_logger("quatbrandt.isometry")


class IsometrySearch:
    """Column backtracking for M with M^dagger H_src M = n * H_dst.

    Column k is drawn from the vectors with v^dagger H_src v = n * dst_kk; once
    a column is fixed, the pools of the later columns are filtered by the full
    quaternion cross-constraint v_k^dagger H_src w = n * dst_km.
    """

    def __init__(self, src: HermitianForm, dst: HermitianForm, n: int) -> None:
        if src.g != dst.g:
            raise InvalidInputError(f"dimension mismatch: {src.g} vs {dst.g}")
        if n < 1:
            raise InvalidInputError(f"n must be positive, got {n}")
        self.src = src
        self.dst = dst
        self.n = int(n)
        self.g = src.g
        self.order = src.order
        self._r_src = src.matrix.regular_representation()
        self._targets = self.n * dst.matrix.array()
        self._pool_cache: dict[int, np.ndarray] = {}

    # -- pools ------------------------------------------------------------------

    def column_pool(self, k: int) -> np.ndarray:
        value = int(self._targets[k, k, 0])
        if value not in self._pool_cache:
            self._pool_cache[value] = short_vector_array(self.src.gram, value)
        return self._pool_cache[value]

    def _pairing(self, v: np.ndarray) -> np.ndarray:
        """4 x 4g matrix P with P @ w = coordinates of v^dagger H_src w."""
        g = self.g
        blocks = [self.order.left_matrix(self.order.conjugate_coords(v[4 * m : 4 * m + 4])) for m in range(g)]
        return np.hstack(blocks) @ self._r_src

    def _filter(self, pool: np.ndarray, v: np.ndarray, k: int, m: int) -> np.ndarray:
        if len(pool) == 0:
            return pool
        values = pool @ self._pairing(v).T
        mask = np.all(values == self._targets[k, m], axis=1)
        return pool[mask]

    def _narrow(self, pools: list[np.ndarray], v: np.ndarray, k: int) -> list[np.ndarray] | None:
        out = list(pools[: k + 1])
        for m in range(k + 1, self.g):
            filtered = self._filter(pools[m], v, k, m)
            if len(filtered) == 0:
                return None
            out.append(filtered)
        return out

    # -- traversal --------------------------------------------------------------

    def _initial_pools(self, first: np.ndarray | None = None) -> list[np.ndarray]:
        pools = [self.column_pool(k) for k in range(self.g)]
        if first is not None:
            pools[0] = first.reshape(1, -1)
        return pools

    def _count(self, k: int, pools: list[np.ndarray]) -> int:
        if k == self.g - 1:
            return int(len(pools[k]))
        total = 0
        for v in pools[k]:
            narrowed = self._narrow(pools, v, k)
            if narrowed is not None:
                total += self._count(k + 1, narrowed)
        return total

    def _walk(
        self,
        k: int,
        pools: list[np.ndarray],
        chosen: list[np.ndarray],
        emit: Callable[[list[np.ndarray]], bool],
    ) -> bool:
        """Depth-first enumeration; ``emit`` returns False to stop early."""
        for v in pools[k]:
            if k == self.g - 1:
                if not emit(chosen + [v]):
                    return False
                continue
            narrowed = self._narrow(pools, v, k)
            if narrowed is None:
                continue
            if not self._walk(k + 1, narrowed, chosen + [v], emit):
                return False
        return True

    def completions(self, first: np.ndarray | None = None, limit: int | None = None) -> list[list[np.ndarray]]:
        found: list[list[np.ndarray]] = []

        def emit(cols: list[np.ndarray]) -> bool:
            found.append(cols)
            return limit is None or len(found) < limit

        pools = self._initial_pools(first)
        if all(len(p) for p in pools):
            self._walk(0, pools, [], emit)
        return found

    def count_from(self, first: np.ndarray | None = None) -> int:
        pools = self._initial_pools(first)
        if not all(len(p) for p in pools):
            return 0
        return self._count(0, pools)

    # -- orbit reduction of the first column -----------------------------------

    def first_column_orbits(self, left_automorphisms: Sequence[OrderMatrix]) -> list[tuple[np.ndarray, dict[tuple[int, ...], int]]]:
        """Orbits of Aut(H_src) on the first-column pool, each as (representative, {member: group index})."""
        pool = self.column_pool(0)
        reps = np.stack([U.regular_representation() for U in left_automorphisms])
        index = {tuple(int(x) for x in v): i for i, v in enumerate(pool)}
        seen = np.zeros(len(pool), dtype=bool)
        orbits: list[tuple[np.ndarray, dict[tuple[int, ...], int]]] = []
        for i, v in enumerate(pool):
            if seen[i]:
                continue
            images = np.einsum("uab,b->ua", reps, v)
            members: dict[tuple[int, ...], int] = {}
            for u, img in enumerate(images):
                key = tuple(int(x) for x in img)
                j = index.get(key)
                if j is None:
                    raise OrbitError("automorphism image left the first-column pool")
                if key not in members:
                    members[key] = u
                    seen[j] = True
            orbits.append((v, members))
        return orbits


def _to_matrix(order, columns: list[np.ndarray]) -> OrderMatrix:
    return OrderMatrix.from_columns(order, [c.tolist() for c in columns])


def _verify(src: HermitianForm, dst: HermitianForm, n: int, solutions: Sequence[OrderMatrix]) -> None:
    order = src.order
    h = src.matrix.array()
    want = n * dst.matrix.array()
    for M in solutions:
        arr = M.array()
        got = matmul_coords(order, matmul_coords(order, dagger_coords(order, arr), h), arr)
        if not np.array_equal(got, want):
            raise OrbitError(f"isometry check failed for {M.entries}")


def _verify_enabled() -> bool:
    from quatbrandt.runtime.settings import get_settings

    return bool(get_settings().VERIFY_SOLUTIONS)


def isometry_solutions(
    src: HermitianForm,
    dst: HermitianForm,
    n: int,
    *,
    limit: int | None = None,
    left_automorphisms: Sequence[OrderMatrix] | None = None,
) -> list[OrderMatrix]:
    """All M over O with M^dagger src M = n * dst, in canonical order.

    With ``limit`` the search stops after that many solutions (the result is
    then a prefix of the traversal, used for existence tests). Passing
    ``left_automorphisms`` = Aut(src) splits the first column into orbits and
    rebuilds the remaining solutions by applying a transversal.
    """
    search = IsometrySearch(src, dst, n)
    order = src.order
    if limit is not None or not left_automorphisms:
        sols = [_to_matrix(order, cols) for cols in search.completions(limit=limit)]
    else:
        sols = []
        auts = list(left_automorphisms)
        reps = [U.regular_representation() for U in auts]
        for rep, members in search.first_column_orbits(auts):
            base = search.completions(first=rep)
            for u in members.values():
                R = reps[u]
                for cols in base:
                    sols.append(_to_matrix(order, [R @ c for c in cols]))
    sols.sort()
    if _verify_enabled():
        _verify(src, dst, n, sols)
    logger.debug("isometries g=%d n=%d: %d", src.g, n, len(sols))
    return sols


def count_isometries(
    src: HermitianForm,
    dst: HermitianForm,
    n: int,
    *,
    left_automorphisms: Sequence[OrderMatrix] | None = None,
) -> int:
    """#{M : M^dagger src M = n * dst} without materializing the matrices."""
    search = IsometrySearch(src, dst, n)
    if not left_automorphisms:
        return search.count_from()
    total = 0
    for rep, members in search.first_column_orbits(list(left_automorphisms)):
        total += len(members) * search.count_from(first=rep)
    return total


def are_isometric(src: HermitianForm, dst: HermitianForm) -> bool:
    """Existence of an invertible M with M^dagger src M = dst (equal Haupt norms force invertibility)."""
    if src.g != dst.g or haupt_norm(src) != haupt_norm(dst):
        return False
    return bool(isometry_solutions(src, dst, 1, limit=1))


def automorphism_group(H: HermitianForm) -> list[OrderMatrix]:
    return isometry_solutions(H, H, 1)
