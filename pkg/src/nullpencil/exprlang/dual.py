"""Second-order forward-mode dual numbers.

A :class:`Dual2` carries ``(value, d1, d2)`` for one designated variable.
Components may themselves be :class:`Dual2`, which gives hyper-dual numbers
for mixed and higher derivatives: nesting a dual in ``t`` inside a dual in
``s`` yields every partial up to ``d^2/ds^2 d^2/dt^2``.

The elementary functions at module level (:func:`sin`, :func:`sqrt`, ...)
dispatch on the argument type so that the same code path serves floats and
arbitrarily nested duals.
"""

from __future__ import annotations

import math
from numbers import Real

from ..errors import DomainError

__all__ = [
    "Dual2",
    "real",
    "variable",
    "sin",
    "cos",
    "tan",
    "exp",
    "log",
    "sqrt",
    "sinh",
    "cosh",
    "power",
    "absolute",
]


def real(x) -> float:
    """Innermost real part of a float or (nested) dual."""
    while isinstance(x, Dual2):
        x = x.value
    return float(x)


def variable(value, order_seed=1.0) -> Dual2:
    """Seed an independent variable: ``Dual2(value, 1, 0)``."""
    return Dual2(value, order_seed, 0.0)


class Dual2:
    """Truncated Taylor number ``value + d1*e + d2*e^2/2``."""

    __slots__ = ("value", "d1", "d2")

    def __init__(self, value, d1=0.0, d2=0.0):
        self.value = value
        self.d1 = d1
        self.d2 = d2

    def __repr__(self) -> str:
        return f"Dual2({self.value!r}, {self.d1!r}, {self.d2!r})"

    def __iter__(self):
        yield self.value
        yield self.d1
        yield self.d2

    def __eq__(self, other):
        if isinstance(other, Dual2):
            return (self.value, self.d1, self.d2) == (other.value, other.d1, other.d2)
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        if isinstance(other, Dual2):
            return Dual2(self.value + other.value, self.d1 + other.d1, self.d2 + other.d2)
        return Dual2(self.value + other, self.d1, self.d2)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dual2):
            return Dual2(self.value - other.value, self.d1 - other.d1, self.d2 - other.d2)
        return Dual2(self.value - other, self.d1, self.d2)

    def __rsub__(self, other):
        return Dual2(other - self.value, -self.d1, -self.d2)

    def __neg__(self):
        return Dual2(-self.value, -self.d1, -self.d2)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Dual2):
            a, a1, a2 = self.value, self.d1, self.d2
            b, b1, b2 = other.value, other.d1, other.d2
            return Dual2(a * b, a * b1 + a1 * b, a * b2 + 2 * (a1 * b1) + a2 * b)
        return Dual2(self.value * other, self.d1 * other, self.d2 * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual2):
            if real(other) == 0.0:
                raise DomainError("division by zero")
            b, b1, b2 = other.value, other.d1, other.d2
            q = self.value / b
            q1 = (self.d1 - q * b1) / b
            q2 = (self.d2 - 2 * (q1 * b1) - q * b2) / b
            return Dual2(q, q1, q2)
        if real(other) == 0.0:
            raise DomainError("division by zero")
        return Dual2(self.value / other, self.d1 / other, self.d2 / other)

    def __rtruediv__(self, other):
        return Dual2(other, 0.0, 0.0) / self

    def __pow__(self, other):
        return power(self, other)

    def __rpow__(self, other):
        return power(other, self)

    def __abs__(self):
        return absolute(self)

    def __float__(self):
        return real(self)


def _chain(x: Dual2, f0, f1, f2) -> Dual2:
    # f0, f1, f2 = f(v), f'(v), f''(v) evaluated at the (possibly dual) value v
    d1 = x.d1
    return Dual2(f0, f1 * d1, f2 * (d1 * d1) + f1 * x.d2)


def _finite(y: float, name: str) -> float:
    if not math.isfinite(y):
        raise DomainError(f"{name} produced a non-finite result")
    return y


def sin(x):
    if isinstance(x, Dual2):
        v = x.value
        s, c = sin(v), cos(v)
        return _chain(x, s, c, -s)
    return math.sin(x)


def cos(x):
    if isinstance(x, Dual2):
        v = x.value
        s, c = sin(v), cos(v)
        return _chain(x, c, -s, -c)
    return math.cos(x)


def tan(x):
    if abs(math.cos(real(x))) < 1e-300:
        raise DomainError("tan evaluated at a pole")
    if isinstance(x, Dual2):
        tv = tan(x.value)
        sec2 = 1.0 + tv * tv
        return _chain(x, tv, sec2, 2.0 * tv * sec2)
    return math.tan(x)


def exp(x):
    if isinstance(x, Dual2):
        e = exp(x.value)
        return _chain(x, e, e, e)
    try:
        return _finite(math.exp(x), "exp")
    except OverflowError:
        raise DomainError("exp overflow") from None


def log(x):
    if real(x) <= 0.0:
        raise DomainError(f"log of non-positive value {real(x)!r}")
    if isinstance(x, Dual2):
        v = x.value
        inv = 1.0 / v
        return _chain(x, log(v), inv, -(inv * inv))
    return math.log(x)


def sqrt(x):
    r = real(x)
    if r < 0.0:
        raise DomainError(f"sqrt of negative value {r!r}")
    if isinstance(x, Dual2):
        if r == 0.0:
            raise DomainError("sqrt is not differentiable at 0")
        root = sqrt(x.value)
        half_inv = 0.5 / root
        return _chain(x, root, half_inv, -half_inv / (2.0 * x.value))
    return math.sqrt(x)


def sinh(x):
    if isinstance(x, Dual2):
        v = x.value
        sh, ch = sinh(v), cosh(v)
        return _chain(x, sh, ch, sh)
    try:
        return math.sinh(x)
    except OverflowError:
        raise DomainError("sinh overflow") from None


def cosh(x):
    if isinstance(x, Dual2):
        v = x.value
        sh, ch = sinh(v), cosh(v)
        return _chain(x, ch, sh, ch)
    try:
        return math.cosh(x)
    except OverflowError:
        raise DomainError("cosh overflow") from None


def absolute(x):
    """|x| with the derivative sign taken from the real part."""
    if isinstance(x, Dual2):
        r = real(x)
        if r == 0.0:
            raise DomainError("abs is not differentiable at 0")
        return x if r > 0 else -x
    return abs(x)


def _int_power(x, n: int):
    # square-and-multiply keeps integer powers exact and defined at x = 0
    result = 1.0
    base = x
    while n:
        if n & 1:
            result = base * result
        n >>= 1
        if n:
            base = base * base
    return result


def power(base, exponent):
    """``base ** exponent`` for floats and duals.

    Integral real exponents use repeated multiplication, so negative bases
    are allowed there. Anything else goes through ``exp(exponent*log(base))``
    and requires a positive base.
    """
    if not isinstance(exponent, Dual2):
        e = float(exponent)
        if e.is_integer() and abs(e) <= 64:
            n = int(e)
            if n >= 0:
                return _int_power(base, n)
            if real(base) == 0.0:
                raise DomainError("zero raised to a negative power")
            return 1.0 / _int_power(base, -n)
        if not isinstance(base, Dual2):
            if base < 0.0:
                raise DomainError("negative base with non-integer exponent")
            try:
                return _finite(math.pow(base, e), "power")
            except OverflowError:
                raise DomainError("power overflow") from None
        if real(base) <= 0.0:
            raise DomainError("non-positive base with non-integer exponent")
        return exp(log(base) * e)
    if isinstance(base, Real) and base <= 0.0:
        raise DomainError("non-positive base with variable exponent")
    if isinstance(base, Dual2) and real(base) <= 0.0:
        raise DomainError("non-positive base with variable exponent")
    return exp(exponent * log(base))
