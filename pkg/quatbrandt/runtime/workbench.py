from __future__ import annotations

from functools import cached_property, lru_cache
from typing import TYPE_CHECKING, Any

from sympy import isprime

from quatbrandt.arith.orders import MaximalOrder, maximal_order
from quatbrandt.arith.quaternion import QuaternionAlgebra, algebra_for_prime
from quatbrandt.brandt.backends import make_backend
from quatbrandt.brandt.matrices import BrandtMatrix, brandt
from quatbrandt.classes.classset import ClassSet
from quatbrandt.classes.hermitian_classes import SUPPORTED_G, hermitian_class_reps
from quatbrandt.classes.ideal_classes import right_ideal_classes
from quatbrandt.errors import InvalidInputError
from quatbrandt.logging import get_logger
from quatbrandt.runtime.cache import ArtifactCache

if TYPE_CHECKING:
    from quatbrandt.graphs.weighted import WeightedGraph
    from quatbrandt.spectral.ramanujan import SpectralReport

logger = get_logger("quatbrandt.runtime")


class Workbench:
    """Everything derived from one (g, p): algebra, order, class set, backend and Brandt matrices."""

    def __init__(self, g: int, p: int, *, cache: ArtifactCache | None = None):
        if g != 1 and g not in SUPPORTED_G:
            raise InvalidInputError(f"g must be 1, 2 or 3, got {g}")
        if not isprime(p):
            raise InvalidInputError(f"p must be prime, got {p}")
        self.g = g
        self.p = p
        self.cache = cache if cache is not None else ArtifactCache.from_settings()
        self._brandt: dict[int, BrandtMatrix] = {}

    @cached_property
    def algebra(self) -> QuaternionAlgebra:
        return algebra_for_prime(self.p)

    @cached_property
    def order(self) -> MaximalOrder:
        return maximal_order(self.algebra)

    @cached_property
    def class_set(self) -> ClassSet:
        cached = self.cache.load_class_set(self.g, self.p, self.order)
        if cached is not None:
            logger.info("g=%d p=%d: loaded %d classes from cache", self.g, self.p, cached.h)
            return cached
        if self.g == 1:
            classes = right_ideal_classes(self.order)
        else:
            classes = hermitian_class_reps(self.g, self.order)
        self.cache.store_class_set(classes)
        return classes

    @cached_property
    def backend(self) -> Any:
        return make_backend(self.class_set)

    def brandt(self, n: int) -> BrandtMatrix:
        if n < 1:
            raise InvalidInputError(f"n must be >= 1, got {n}")
        if n not in self._brandt:
            fp = self.class_set.fingerprint
            B = self.cache.load_brandt(self.g, self.p, n, fp)
            if B is None:
                B = brandt(self.g, self.p, n, self.class_set, backend=self.backend)
                self.cache.store_brandt(B, fp)
            self._brandt[n] = B
        return self._brandt[n]

    def graph(self, kind: str, ell: int) -> WeightedGraph:
        from quatbrandt.graphs.isogeny import GRAPH_BUILDERS

        if kind not in GRAPH_BUILDERS:
            raise InvalidInputError(f"graph kind must be one of {sorted(GRAPH_BUILDERS)}, got {kind!r}")
        return GRAPH_BUILDERS[kind](self.g, ell, self.p, workbench=self)

    def spectral(self, ell: int) -> SpectralReport:
        from quatbrandt.spectral.ramanujan import ramanujan_verdict

        if ell == self.p or not isprime(ell):
            raise InvalidInputError(f"l must be a prime different from p={self.p}, got {ell}")
        return ramanujan_verdict(self.brandt(ell))


@lru_cache(maxsize=32)
def get_workbench(g: int, p: int) -> Workbench:
    return Workbench(g, p)
