from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Iterable

from pydantic import BaseModel
from sympy import Rational

from quatbrandt.brandt.matrices import BrandtMatrix
from quatbrandt.errors import SpectralError
from quatbrandt.logging import get_logger
from quatbrandt.spectral.charpoly import (
    MatrixLike,
    as_poly,
    char_poly,
    matrix_rows,
    nontrivial_factor,
    root_multiplicity,
    roots_in_interval,
)

logger = get_logger("quatbrandt.spectral")

SURVEY_COLUMNS = ["g", "ℓ", "p", "h", "k", "ramanujan", "second_largest_abs_lo", "second_largest_abs_hi", "charpoly"]


@dataclass(frozen=True)
class SpectralReport:
    degree: int
    h: int
    charpoly: tuple[int, ...]
    trivial_multiplicity: int
    ramanujan: bool
    # certified enclosure [lo, hi] of max |lambda| over nontrivial eigenvalues; None when h = 1
    second_largest_abs: tuple[Fraction, Fraction] | None

    def charpoly_expr(self) -> str:
        return str(as_poly(self.charpoly).as_expr())

    @property
    def verdict(self) -> str:
        return "RAMANUJAN" if self.ramanujan else "NOT RAMANUJAN"


def _abs_enclosure(q, digits: int) -> tuple[Fraction, Fraction] | None:
    if q.degree() < 1:
        return None
    los: list[Fraction] = []
    his: list[Fraction] = []
    for (a, b), _ in q.intervals(eps=Rational(1, 10**digits)):
        fa, fb = Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q))
        if fa >= 0:
            lo, hi = fa, fb
        elif fb <= 0:
            lo, hi = -fb, -fa
        else:
            lo, hi = Fraction(0), max(-fa, fb)
        los.append(lo)
        his.append(hi)
    return max(los), max(his)


def ramanujan_verdict(B: MatrixLike, k: int | None = None, *, digits: int | None = None) -> SpectralReport:
    """Exact Ramanujan decision for a k-regular weighted-symmetric matrix.

    With q = charpoly / (x - k), the nontrivial eigenvalues satisfy
    lambda^2 <= 4(k - 1) iff every root of s(y), s(x^2) = q(x) q(-x), lies in
    [0, 4(k - 1)]; the roots are counted with multiplicity by Sturm sequences.
    """
    rows = matrix_rows(B)
    sums = {sum(r) for r in rows}
    if len(sums) != 1:
        raise SpectralError(f"row sums are not constant: {sorted(sums)}")
    row_sum = sums.pop()
    if k is None:
        k = row_sum
    elif k != row_sum:
        raise SpectralError(f"declared degree {k} differs from the row sum {row_sum}")
    if digits is None:
        from quatbrandt.runtime.settings import get_settings

        digits = get_settings().SPECTRAL_INTERVAL_DIGITS

    cp = char_poly(B)
    mult = root_multiplicity(cp, k)
    if mult != 1:
        raise SpectralError(f"trivial eigenvalue {k} has multiplicity {mult}")
    q = nontrivial_factor(cp, k)
    d = q.degree()
    if d < 1:
        ramanujan = True
    else:
        prod = q * q.compose(as_poly([-1, 0]))
        s = as_poly([int(c) for c in prod.all_coeffs()[::2]])
        inside = roots_in_interval(s, -1, 4 * (k - 1))
        ramanujan = inside == d
    report = SpectralReport(
        degree=k,
        h=len(rows),
        charpoly=tuple(cp),
        trivial_multiplicity=mult,
        ramanujan=ramanujan,
        second_largest_abs=_abs_enclosure(q, digits) if d >= 1 else None,
    )
    logger.debug("k=%d h=%d: %s", k, len(rows), report.verdict)
    return report


class SurveyRow(BaseModel):
    g: int
    ell: int
    p: int
    h: int | None = None
    k: int | None = None
    ramanujan: bool | None = None
    second_largest_abs_lo: str | None = None
    second_largest_abs_hi: str | None = None
    charpoly: str | None = None
    error: str | None = None


def _decimal(x: Fraction, digits: int, *, up: bool) -> str:
    scaled = x * 10**digits
    n = ceil(scaled) if up else floor(scaled)
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def survey_row(g: int, ell: int, p: int, report: SpectralReport, digits: int) -> SurveyRow:
    lo = hi = None
    if report.second_largest_abs is not None:
        lo = _decimal(report.second_largest_abs[0], digits, up=False)
        hi = _decimal(report.second_largest_abs[1], digits, up=True)
    return SurveyRow(
        g=g,
        ell=ell,
        p=p,
        h=report.h,
        k=report.degree,
        ramanujan=report.ramanujan,
        second_largest_abs_lo=lo,
        second_largest_abs_hi=hi,
        charpoly=report.charpoly_expr(),
    )


def _survey_cell(g: int, ell: int, p: int) -> SurveyRow:
    from quatbrandt.runtime.settings import get_settings
    from quatbrandt.runtime.workbench import get_workbench

    digits = get_settings().SPECTRAL_INTERVAL_DIGITS
    try:
        B: BrandtMatrix = get_workbench(g, p).brandt(ell)
        return survey_row(g, ell, p, ramanujan_verdict(B, digits=digits), digits)
    except Exception as exc:
        logger.warning("survey cell (g=%d, l=%d, p=%d) failed: %s", g, ell, p, exc)
        return SurveyRow(g=g, ell=ell, p=p, error=f"{type(exc).__name__}: {exc}")


def ramanujan_survey(g: int, ell: int, p_range: Iterable[int], *, workers: int | None = None) -> list[SurveyRow]:
    """One verdict per prime p != ell in ``p_range``; failing cells carry an error instead of aborting."""
    from sympy import isprime

    from quatbrandt.runtime.settings import get_settings

    primes = sorted({int(p) for p in p_range if isprime(int(p)) and int(p) != ell})
    if workers is None:
        workers = get_settings().WORKERS
    if workers > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_survey_cell, [g] * len(primes), [ell] * len(primes), primes))
    else:
        rows = [_survey_cell(g, ell, p) for p in primes]
    return sorted(rows, key=lambda r: r.p)


def survey_to_csv(rows: Iterable[SurveyRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SURVEY_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r.g,
                r.ell,
                r.p,
                "" if r.h is None else r.h,
                "" if r.k is None else r.k,
                "" if r.ramanujan is None else str(r.ramanujan).lower(),
                r.second_largest_abs_lo or "",
                r.second_largest_abs_hi or "",
                r.charpoly or (f"error: {r.error}" if r.error else ""),
            ]
        )
    return buf.getvalue()
