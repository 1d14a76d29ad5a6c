from __future__ import annotations


class QuatBrandtError(Exception):
    """Base class for every error raised by quatbrandt."""


class InvalidInputError(QuatBrandtError, ValueError):
    """A prime, dimension or degree argument is outside the supported range."""


class OrderError(QuatBrandtError):
    """An algebra or order failed its ramification, closure or discriminant check."""


class HauptNormError(QuatBrandtError):
    """The regular-representation determinant is not a fourth power, or the two HNm algorithms disagree."""


class OrbitError(QuatBrandtError):
    """A group action does not stabilize the set it is applied to."""


class ClassEnumerationError(QuatBrandtError):
    """The class search hit its configured ceiling (or exhausted) before meeting the mass."""


class ClassSetError(QuatBrandtError):
    """A class set does not carry a valid mass certificate."""


class BrandtError(QuatBrandtError):
    """An isometry count was not divisible by the automorphism count."""


class GraphError(QuatBrandtError):
    """Opposite pairing or edge weights of a graph are inconsistent."""


class SpectralError(QuatBrandtError):
    """A matrix cannot be certified (not weighted-symmetric, not regular, repeated trivial eigenvalue)."""
