from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from pydantic import BaseModel

from quatbrandt.arith.linalg import zz_matrix
from quatbrandt.brandt.backends import make_backend
from quatbrandt.classes.classset import ClassSet
from quatbrandt.errors import BrandtError, InvalidInputError
from quatbrandt.logging import get_logger

logger = get_logger("quatbrandt.brandt")

FORMAT_VERSION = 1

IntMatrix = tuple[tuple[int, ...], ...]


class BrandtRecord(BaseModel):
    format_version: int = FORMAT_VERSION
    g: int
    p: int
    n: int
    h: int
    entries: list[list[int]]
    weights: list[int]
    classset_fingerprint: str | None = None


def hecke_degree(g: int, ell: int) -> int:
    """N_g(l) = prod_{k=1..g} (l^k + 1)."""
    out = 1
    for k in range(1, g + 1):
        out *= ell**k + 1
    return out


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    if not A or not B:
        return ()
    prod = zz_matrix(A) * zz_matrix(B)
    return tuple(tuple(int(v) for v in row) for row in prod.to_list())


def identity_matrix(h: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(h)) for i in range(h))


@dataclass(frozen=True)
class BrandtMatrix:
    g: int
    p: int
    n: int
    entries: IntMatrix
    weights: tuple[int, ...]

    @property
    def h(self) -> int:
        return len(self.entries)

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.entries]

    def is_weighted_symmetric(self) -> bool:
        e, B = self.weights, self.entries
        return all(e[j] * B[i][j] == e[i] * B[j][i] for i in range(self.h) for j in range(self.h))

    def __matmul__(self, other: BrandtMatrix) -> IntMatrix:
        return matmul(self.entries, other.entries)

    def to_record(self, classset_fingerprint: str | None = None) -> BrandtRecord:
        return BrandtRecord(
            g=self.g,
            p=self.p,
            n=self.n,
            h=self.h,
            entries=[list(r) for r in self.entries],
            weights=list(self.weights),
            classset_fingerprint=classset_fingerprint,
        )

    @classmethod
    def from_record(cls, record: BrandtRecord) -> BrandtMatrix:
        if record.format_version != FORMAT_VERSION:
            raise BrandtError(f"unsupported format_version {record.format_version}")
        if len(record.entries) != record.h or any(len(r) != record.h for r in record.entries):
            raise BrandtError("entries are not h x h")
        return cls(
            g=record.g,
            p=record.p,
            n=record.n,
            entries=tuple(tuple(int(x) for x in r) for r in record.entries),
            weights=tuple(int(x) for x in record.weights),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in self.entries:
            writer.writerow(row)
        return buf.getvalue()


def _check_classes(g: int, p: int, classes: ClassSet) -> None:
    if classes.g != g or classes.p != p:
        raise InvalidInputError(f"class set is for (g={classes.g}, p={classes.p}), not (g={g}, p={p})")


def brandt(g: int, p: int, n: int, classes: ClassSet, *, backend: Any = None, workers: int | None = None) -> BrandtMatrix:
    """B_g(n)_ij = #{edges i -> j at level n} / e_j.

    With ``workers > 1`` the h^2 counts run on a thread pool; results are
    gathered in row-major order, so the matrix does not depend on scheduling.
    """
    _check_classes(g, p, classes)
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if workers is None:
        from quatbrandt.runtime.settings import get_settings

        workers = get_settings().WORKERS
    backend = backend or make_backend(classes)
    h, e = classes.h, classes.aut_counts
    cells = [(i, j) for i in range(h) for j in range(h)]
    if workers > 1 and len(cells) > 1:
        # automorphism groups are memoized on the backend; fill them before fanning out
        for i in range(h):
            backend.automorphisms(i)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda ij: backend.count(ij[0], ij[1], n), cells))
    else:
        counts = [backend.count(i, j, n) for i, j in cells]

    entries = [[0] * h for _ in range(h)]
    for (i, j), c in zip(cells, counts):
        if c % e[j]:
            raise BrandtError(f"B_{g}({n})[{i},{j}]: count {c} is not divisible by e_{j} = {e[j]}")
        entries[i][j] = c // e[j]
        logger.debug("g=%d p=%d n=%d (%d,%d): %d / %d", g, p, n, i, j, c, e[j])
    return BrandtMatrix(g=g, p=p, n=n, entries=tuple(tuple(r) for r in entries), weights=tuple(e))


def brandt_zero(g: int, p: int, classes: ClassSet) -> tuple[tuple[Fraction, ...], ...]:
    """B_g(0)_ij = 1 / e_j."""
    _check_classes(g, p, classes)
    row = tuple(Fraction(1, e) for e in classes.aut_counts)
    return tuple(row for _ in range(classes.h))
