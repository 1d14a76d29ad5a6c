from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from sympy import factorint, isprime, legendre_symbol, multiplicity, nextprime

from quatbrandt.errors import InvalidInputError, OrderError

Place = Union[int, float]  # a rational prime, or math.inf for the real place

INFINITY: float = math.inf


def _fr(x: object) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)  # type: ignore[arg-type]


@dataclass(frozen=True)
class QuaternionAlgebra:
    """The algebra (a, b | Q): i^2 = a, j^2 = b, k = ij = -ji.

    ``p`` records the ramified finite prime when the algebra was built by
    :func:`algebra_for_prime`; general (a, b) pairs are accepted but only
    definite ones.
    """

    a: int
    b: int
    p: int | None = None

    def __post_init__(self) -> None:
        if self.a >= 0 or self.b >= 0:
            raise InvalidInputError(f"algebra ({self.a},{self.b}) is not definite")

    def element(self, *coeffs: object) -> QuaternionElement:
        if len(coeffs) == 1 and isinstance(coeffs[0], (tuple, list)):
            coeffs = tuple(coeffs[0])  # type: ignore[arg-type]
        if len(coeffs) != 4:
            raise InvalidInputError("a quaternion needs exactly 4 coefficients")
        return QuaternionElement(self, tuple(_fr(c) for c in coeffs))

    def scalar(self, c: object) -> QuaternionElement:
        return self.element(c, 0, 0, 0)

    @property
    def one(self) -> QuaternionElement:
        return self.scalar(1)

    @property
    def i(self) -> QuaternionElement:
        return self.element(0, 1, 0, 0)

    @property
    def j(self) -> QuaternionElement:
        return self.element(0, 0, 1, 0)

    @property
    def k(self) -> QuaternionElement:
        return self.element(0, 0, 0, 1)

    def multiply(self, x: QuaternionElement, y: QuaternionElement) -> QuaternionElement:
        return multiply(x, y, self)

    def ramified_primes(self) -> frozenset[int]:
        """Finite primes q with (a, b)_q = -1 (only q | 2ab can ramify)."""
        candidates = set(factorint(2 * abs(self.a) * abs(self.b)))
        return frozenset(q for q in candidates if hilbert_symbol(self.a, self.b, q) == -1)


@dataclass(frozen=True)
class QuaternionElement:
    algebra: QuaternionAlgebra
    coeffs: tuple[Fraction, Fraction, Fraction, Fraction]

    def __add__(self, other: QuaternionElement) -> QuaternionElement:
        return QuaternionElement(self.algebra, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))  # type: ignore[arg-type]

    def __sub__(self, other: QuaternionElement) -> QuaternionElement:
        return QuaternionElement(self.algebra, tuple(x - y for x, y in zip(self.coeffs, other.coeffs)))  # type: ignore[arg-type]

    def __neg__(self) -> QuaternionElement:
        return QuaternionElement(self.algebra, tuple(-x for x in self.coeffs))  # type: ignore[arg-type]

    def __mul__(self, other: object) -> QuaternionElement:
        if isinstance(other, QuaternionElement):
            return multiply(self, other, self.algebra)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> QuaternionElement:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: object) -> QuaternionElement:
        f = _fr(c)
        return QuaternionElement(self.algebra, tuple(f * x for x in self.coeffs))  # type: ignore[arg-type]

    def conjugate(self) -> QuaternionElement:
        x0, x1, x2, x3 = self.coeffs
        return QuaternionElement(self.algebra, (x0, -x1, -x2, -x3))

    def reduced_norm(self) -> Fraction:
        a, b = self.algebra.a, self.algebra.b
        x0, x1, x2, x3 = self.coeffs
        return x0 * x0 - a * x1 * x1 - b * x2 * x2 + a * b * x3 * x3

    def reduced_trace(self) -> Fraction:
        return 2 * self.coeffs[0]

    def inverse(self) -> QuaternionElement:
        n = self.reduced_norm()
        if n == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conjugate().scale(Fraction(1) / n)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_scalar(self) -> bool:
        return not any(self.coeffs[1:])

    def __str__(self) -> str:
        parts = []
        for c, sym in zip(self.coeffs, ("", "i", "j", "k")):
            if c:
                parts.append(f"{c}{sym}" if sym else f"{c}")
        return " + ".join(parts) if parts else "0"


def multiply(x: QuaternionElement, y: QuaternionElement, A: QuaternionAlgebra) -> QuaternionElement:
    a, b = A.a, A.b
    x0, x1, x2, x3 = x.coeffs
    y0, y1, y2, y3 = y.coeffs
    return QuaternionElement(
        A,
        (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ),
    )


def hilbert_symbol(a: int, b: int, q: Place) -> int:
    """Local Hilbert symbol (a, b)_q for nonzero integers, q prime or math.inf."""
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        raise InvalidInputError("hilbert symbol needs nonzero arguments")
    if q == INFINITY:
        return -1 if (a < 0 and b < 0) else 1
    q = int(q)
    if not isprime(q):
        raise InvalidInputError(f"{q} is not a prime place")
    alpha, beta = multiplicity(q, a), multiplicity(q, b)
    u, v = a // q**alpha, b // q**beta
    if q == 2:
        def eps(t: int) -> int:
            return ((t - 1) // 2) % 2

        def omega(t: int) -> int:
            return ((t * t - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((q - 1) // 2)) % 2 else 1
    return sign * int(legendre_symbol(u % q, q)) ** beta * int(legendre_symbol(v % q, q)) ** alpha


def _least_auxiliary_prime(p: int) -> int:
    q = 3
    while not (q % 4 == 3 and legendre_symbol(q, p) == -1):
        q = nextprime(q)
    return q


def algebra_for_prime(p: int) -> QuaternionAlgebra:
    """Definite algebra H_p ramified exactly at {p, inf}."""
    if isinstance(p, bool) or not isinstance(p, int) or not isprime(p):
        raise InvalidInputError(f"p={p!r} is not a prime")
    if p == 2:
        a, b = -1, -1
    elif p % 4 == 3:
        a, b = -1, -p
    elif p % 8 == 5:
        a, b = -2, -p
    else:
        a, b = -_least_auxiliary_prime(p), -p
    A = QuaternionAlgebra(a, b, p)
    ramified = A.ramified_primes()
    if ramified != frozenset({p}) or hilbert_symbol(a, b, INFINITY) != -1:
        raise OrderError(f"({a},{b}) ramifies at {sorted(ramified)}, expected [{p}]")
    return A


def certify_ramification(A: QuaternionAlgebra, primes: Iterable[int] = ()) -> dict[Place, int]:
    """Hilbert symbols of A at every q | 2ab, the extra ``primes`` and infinity."""
    places: set[int] = set(factorint(2 * abs(A.a) * abs(A.b))) | {int(q) for q in primes}
    out: dict[Place, int] = {q: hilbert_symbol(A.a, A.b, q) for q in sorted(places)}
    out[INFINITY] = hilbert_symbol(A.a, A.b, INFINITY)
    return out
