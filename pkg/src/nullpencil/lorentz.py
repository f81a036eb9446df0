"""Vector algebra in Minkowski 3-space with signature (-, +, +).

Component 0 is timelike. Components may be floats or dual numbers, so the
same functions serve plain evaluation and forward-mode differentiation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .exprlang.dual import Dual2, real, sqrt

__all__ = [
    "MVec3",
    "CausalCharacter",
    "minkowski_inner",
    "lorentz_cross",
    "pseudo_norm",
    "causal_character",
    "euclidean_norm",
    "det3",
    "value_of",
    "first_of",
    "second_of",
    "DEFAULT_EPS_NULL",
    "FD_EPS_NULL",
]

DEFAULT_EPS_NULL = 1e-9
FD_EPS_NULL = 1e-6


@dataclass(frozen=True)
class MVec3:
    c0: float
    c1: float
    c2: float

    def __post_init__(self):
        for c in (self.c0, self.c1, self.c2):
            if not math.isfinite(real(c)):
                raise ValueError(f"non-finite component in MVec3: {c!r}")

    def __iter__(self):
        yield self.c0
        yield self.c1
        yield self.c2

    def __add__(self, other: MVec3) -> MVec3:
        return MVec3(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: MVec3) -> MVec3:
        return MVec3(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> MVec3:
        return MVec3(-self.c0, -self.c1, -self.c2)

    def __mul__(self, k) -> MVec3:
        return MVec3(self.c0 * k, self.c1 * k, self.c2 * k)

    def __rmul__(self, k) -> MVec3:
        return MVec3(k * self.c0, k * self.c1, k * self.c2)

    def __truediv__(self, k) -> MVec3:
        return MVec3(self.c0 / k, self.c1 / k, self.c2 / k)

    def map(self, fn) -> MVec3:
        return MVec3(fn(self.c0), fn(self.c1), fn(self.c2))

    def tuple(self) -> tuple[float, float, float]:
        return (real(self.c0), real(self.c1), real(self.c2))

    @classmethod
    def zero(cls) -> MVec3:
        return cls(0.0, 0.0, 0.0)


def _part(v: MVec3, attr: str) -> MVec3:
    return MVec3(*(getattr(c, attr) if isinstance(c, Dual2) else (c if attr == "value" else 0.0) for c in v))


def value_of(v: MVec3) -> MVec3:
    """Strip one dual level: the vector itself."""
    return _part(v, "value")


def first_of(v: MVec3) -> MVec3:
    """Strip one dual level: the first derivative."""
    return _part(v, "d1")


def second_of(v: MVec3) -> MVec3:
    """Strip one dual level: the second derivative."""
    return _part(v, "d2")


class CausalCharacter(enum.Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    NULL = "null"


def minkowski_inner(a: MVec3, b: MVec3):
    """<a, b> = -a0 b0 + a1 b1 + a2 b2."""
    return -(a.c0 * b.c0) + a.c1 * b.c1 + a.c2 * b.c2


def lorentz_cross(a: MVec3, b: MVec3) -> MVec3:
    """Lorentzian cross product; satisfies <a x b, a> = <a x b, b> = 0."""
    return MVec3(
        a.c2 * b.c1 - a.c1 * b.c2,
        a.c2 * b.c0 - a.c0 * b.c2,
        a.c0 * b.c1 - a.c1 * b.c0,
    )


def pseudo_norm(v: MVec3):
    """sqrt(|<v, v>|); zero for null vectors."""
    q = minkowski_inner(v, v)
    if isinstance(q, Dual2):
        return sqrt(q if real(q) > 0 else -q)
    return math.sqrt(abs(q))


def euclidean_norm(v: MVec3) -> float:
    """Plain component norm, used for residual magnitudes and degeneracy."""
    return math.sqrt(sum(real(c) ** 2 for c in v))


def causal_character(v: MVec3, eps_null: float = DEFAULT_EPS_NULL) -> CausalCharacter:
    if eps_null <= 0:
        raise ValueError("eps_null must be positive")
    q = real(minkowski_inner(v, v))
    if abs(q) <= eps_null:
        return CausalCharacter.NULL
    return CausalCharacter.TIMELIKE if q < 0 else CausalCharacter.SPACELIKE


def det3(a: MVec3, b: MVec3, c: MVec3) -> float:
    """Determinant of the matrix whose rows are a, b, c."""
    a0, a1, a2 = a.tuple()
    b0, b1, b2 = b.tuple()
    c0, c1, c2 = c.tuple()
    return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0)
