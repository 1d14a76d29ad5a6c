from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import bernoulli, isprime

from quatbrandt.errors import InvalidInputError


def _zeta_negative_odd(k: int) -> Fraction:
    """zeta(1 - 2k) = -B_2k / 2k."""
    b = bernoulli(2 * k)
    return -Fraction(int(b.p), int(b.q)) / (2 * k)


@lru_cache(maxsize=None)
def mass(g: int, p: int) -> Fraction:
    """Sum of 1/e_j over the class set of dimension g for H_p."""
    if g < 1:
        raise InvalidInputError(f"g must be >= 1, got {g}")
    if not isprime(p):
        raise InvalidInputError(f"p={p} is not a prime")
    sign = -1 if (g * (g + 1) // 2) % 2 else 1
    out = Fraction(sign, 2**g)
    for k in range(1, g + 1):
        out *= _zeta_negative_odd(k) * (p**k + (-1) ** k)
    return out
