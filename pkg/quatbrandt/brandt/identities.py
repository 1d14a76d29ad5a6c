from __future__ import annotations

from math import gcd
from typing import TYPE_CHECKING, Callable

from pydantic import BaseModel, Field
from sympy import factorint, isprime

from quatbrandt.brandt.matrices import hecke_degree, identity_matrix, matmul
from quatbrandt.errors import InvalidInputError, QuatBrandtError
from quatbrandt.logging import get_logger
from quatbrandt.spectral.charpoly import char_poly, real_root_count

if TYPE_CHECKING:
    from quatbrandt.runtime.workbench import Workbench

logger = get_logger("quatbrandt.brandt")


class IdentityCheck(BaseModel):
    name: str
    n: list[int] = Field(default_factory=list)
    ok: bool
    detail: str = ""


class IdentityReport(BaseModel):
    g: int
    p: int
    upto: int
    h: int
    checks: list[IdentityCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.ok]


def _sub(A, B, c: int = 1):
    return tuple(tuple(a - c * b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def verify_identities(g: int, p: int, upto: int, *, workbench: Workbench | None = None) -> IdentityReport:
    """Check the Hecke-algebra identities of B_g(n) for 1 <= n <= ``upto``.

    Every failed check (including a computation that raised) is recorded in the
    report; nothing is raised for a failing identity.
    """
    if upto < 1:
        raise InvalidInputError(f"upto must be >= 1, got {upto}")
    if workbench is None:
        from quatbrandt.runtime.workbench import get_workbench

        workbench = get_workbench(g, p)
    h = workbench.class_set.h
    weights = workbench.class_set.aut_counts
    report = IdentityReport(g=g, p=p, upto=upto, h=h)

    def check(name: str, n: list[int], fn: Callable[[], tuple[bool, str]]) -> None:
        try:
            ok, detail = fn()
        except QuatBrandtError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.checks.append(IdentityCheck(name=name, n=n, ok=ok, detail=detail))
        if not ok:
            logger.warning("g=%d p=%d: %s %s failed: %s", g, p, name, n, detail)

    def B(n: int):
        return workbench.brandt(n).entries

    levels = [n for n in range(1, upto + 1) if n % p]

    for n in levels:
        def row_sums(n: int = n) -> tuple[bool, str]:
            sums = {sum(r) for r in B(n)}
            if len(sums) != 1:
                return False, f"row sums {sorted(sums)} are not constant"
            s = sums.pop()
            if isprime(n) and s != hecke_degree(g, n):
                return False, f"row sum {s} != N_{g}({n}) = {hecke_degree(g, n)}"
            return True, f"row sum {s}"

        def symmetric(n: int = n) -> tuple[bool, str]:
            M = B(n)
            bad = [(i, j) for i in range(h) for j in range(h) if weights[j] * M[i][j] != weights[i] * M[j][i]]
            return (not bad), (f"e_j B_ij != e_i B_ji at {bad[:3]}" if bad else "")

        def real(n: int = n) -> tuple[bool, str]:
            r = real_root_count(char_poly(B(n), weights))
            return r == h, f"{r} of {h} eigenvalues real"

        check("row_sums", [n], row_sums)
        check("weighted_symmetry", [n], symmetric)
        check("real_spectrum", [n], real)

    for m in levels:
        for n in levels:
            if 1 < m < n and m * n <= upto and gcd(m, n) == 1:
                check(
                    "multiplicativity",
                    [m, n],
                    lambda m=m, n=n: (matmul(B(m), B(n)) == B(m * n), ""),
                )
            if m < n:
                check("commutativity", [m, n], lambda m=m, n=n: (matmul(B(m), B(n)) == matmul(B(n), B(m)), ""))

    check("identity_at_1", [1], lambda: (B(1) == identity_matrix(h), ""))

    if g == 1:
        for n in levels:
            f = factorint(n)
            if len(f) != 1:
                continue
            (ell, k), = f.items()
            if k < 2:
                continue
            check(
                "hecke_recursion",
                [n],
                lambda ell=ell, n=n: (_sub(matmul(B(n // ell), B(ell)), B(n // ell**2), ell) == B(n), ""),
            )
        if p <= upto:
            def involution() -> tuple[bool, str]:
                M = B(p)
                perm = all(sorted(row) == [0] * (h - 1) + [1] for row in M)
                if not perm:
                    return False, "B(p) is not a permutation matrix"
                return matmul(M, M) == identity_matrix(h), ""

            check("ramified_involution", [p], involution)

    logger.info("g=%d p=%d upto=%d: %d checks, %d failed", g, p, upto, len(report.checks), len(report.failures))
    return report
