"""Marching-scale functions x(s,t), y(s,t), z(s,t) and their condition checks.

Four structural forms are supported:

* :class:`Product` -- x = k(s) X(t), y = m(s) Y(t), z = w(s) Z(t)
* :class:`Polynomial` -- x = sum_i a1[i] (k(s) X(t))^(i+1), likewise y, z
* :class:`Composed` -- x = f(polynomial x-sum), y = g(...), z = h(...)
* :class:`Custom` -- x, y, z given directly in s and t

The z-factor is called ``w`` (not ``t``) so it cannot collide with the
surface parameter; for Composed forms f, g, h are expressions in ``w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import PreconditionError
from .exprlang import Expr, evaluate, parse
from .exprlang.dual import Dual2, real
from .report import ConditionVerdict

__all__ = [
    "Product",
    "Polynomial",
    "Composed",
    "Custom",
    "MarchingScale",
    "Partials",
    "MarchingPartials",
    "marching_components",
    "eval_marching",
    "partials_marching",
    "check_isoparametric",
    "check_asymptotic_general",
    "check_sufficient_form",
    "sufficient_condition_id",
]


def _p(x, variables):
    return parse(x, variables) if isinstance(x, str) else x


@dataclass(frozen=True)
class Product:
    k: Expr
    m: Expr
    w: Expr
    X: Expr
    Y: Expr
    Z: Expr

    @classmethod
    def from_strings(cls, k, m, w, X, Y, Z) -> "Product":
        return cls(*(_p(v, ("s",)) for v in (k, m, w)), *(_p(v, ("t",)) for v in (X, Y, Z)))


@dataclass(frozen=True)
class Polynomial:
    a1: tuple[float, ...]
    a2: tuple[float, ...]
    a3: tuple[float, ...]
    k: Expr
    m: Expr
    w: Expr
    X: Expr
    Y: Expr
    Z: Expr

    def __post_init__(self):
        p = len(self.a1)
        if p < 1 or len(self.a2) != p or len(self.a3) != p:
            raise ValueError("coefficient lists a1, a2, a3 must share a length p >= 1")

    @property
    def degree(self) -> int:
        return len(self.a1)

    @classmethod
    def from_strings(cls, a1, a2, a3, k, m, w, X, Y, Z) -> "Polynomial":
        return cls(
            tuple(map(float, a1)),
            tuple(map(float, a2)),
            tuple(map(float, a3)),
            *(_p(v, ("s",)) for v in (k, m, w)),
            *(_p(v, ("t",)) for v in (X, Y, Z)),
        )


@dataclass(frozen=True)
class Composed:
    core: Polynomial
    f: Expr
    g: Expr
    h: Expr

    @classmethod
    def from_strings(cls, core: Polynomial, f, g, h) -> "Composed":
        return cls(core, *(_p(v, ("w",)) for v in (f, g, h)))


@dataclass(frozen=True)
class Custom:
    x: Expr
    y: Expr
    z: Expr

    @classmethod
    def from_strings(cls, x, y, z) -> "Custom":
        return cls(*(_p(v, ("s", "t")) for v in (x, y, z)))


Form = Union[Product, Polynomial, Composed, Custom]


@dataclass(frozen=True)
class MarchingScale:
    form: Form
    t0: float = 0.0
    t_domain: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self):
        lo, hi = self.t_domain
        if not lo <= self.t0 <= hi:
            raise ValueError(f"t0={self.t0} outside t_domain {self.t_domain}")
        if lo >= hi:
            raise ValueError(f"t_domain must satisfy T1 < T2, got {self.t_domain}")


def _poly_sum(coeffs: Sequence[float], a, b):
    # sum_i c_i (a b)^(i+1), Horner in the product
    ab = a * b
    acc = 0.0
    for c in reversed(coeffs):
        acc = (acc + c) * ab
    return acc


def _core_sums(core: Polynomial, s, t):
    es, et = {"s": s}, {"t": t}
    return (
        _poly_sum(core.a1, evaluate(core.k, es), evaluate(core.X, et)),
        _poly_sum(core.a2, evaluate(core.m, es), evaluate(core.Y, et)),
        _poly_sum(core.a3, evaluate(core.w, es), evaluate(core.Z, et)),
    )


def marching_components(ms: MarchingScale, s, t):
    """(x, y, z) for float or dual arguments."""
    f = ms.form
    if isinstance(f, Product):
        es, et = {"s": s}, {"t": t}
        return (
            evaluate(f.k, es) * evaluate(f.X, et),
            evaluate(f.m, es) * evaluate(f.Y, et),
            evaluate(f.w, es) * evaluate(f.Z, et),
        )
    if isinstance(f, Polynomial):
        return _core_sums(f, s, t)
    if isinstance(f, Composed):
        cx, cy, cz = _core_sums(f.core, s, t)
        return (evaluate(f.f, {"w": cx}), evaluate(f.g, {"w": cy}), evaluate(f.h, {"w": cz}))
    if isinstance(f, Custom):
        env = {"s": s, "t": t}
        return (evaluate(f.x, env), evaluate(f.y, env), evaluate(f.z, env))
    raise TypeError(f"unknown marching form {type(f).__name__}")


def eval_marching(ms: MarchingScale, s: float, t: float) -> tuple[float, float, float]:
    return tuple(float(real(v)) for v in marching_components(ms, float(s), float(t)))  # type: ignore[return-value]


@dataclass(frozen=True)
class Partials:
    value: float
    ds: float
    dt: float
    dss: float
    dst: float
    dtt: float


@dataclass(frozen=True)
class MarchingPartials:
    x: Partials
    y: Partials
    z: Partials


def _unpack(v) -> Partials:
    # outer dual in s, inner dual in t
    def parts(d):
        if isinstance(d, Dual2):
            return float(real(d.value)), float(real(d.d1)), float(real(d.d2))
        return float(d), 0.0, 0.0

    if not isinstance(v, Dual2):
        return Partials(float(v), 0.0, 0.0, 0.0, 0.0, 0.0)
    f, f_t, f_tt = parts(v.value)
    f_s, f_st, _ = parts(v.d1)
    f_ss, _, _ = parts(v.d2)
    return Partials(f, f_s, f_t, f_ss, f_st, f_tt)


def partials_marching(ms: MarchingScale, s: float, t: float) -> MarchingPartials:
    """All first partials and the second partials entering dN/ds."""
    S = Dual2(Dual2(float(s)), Dual2(1.0), Dual2(0.0))
    T = Dual2(Dual2(float(t), 1.0, 0.0))
    x, y, z = marching_components(ms, S, T)
    return MarchingPartials(_unpack(x), _unpack(y), _unpack(z))


def _grid(domain, n_samples):
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    return np.linspace(domain[0], domain[1], n_samples)


def check_isoparametric(
    ms: MarchingScale,
    curve_domain: tuple[float, float],
    n_samples: int = 256,
    eps: float = DEFAULT_TOLERANCES.analytic,
) -> ConditionVerdict:
    """max_s |x(s,t0)| + |y(s,t0)| + |z(s,t0)|."""
    grid = _grid(curve_domain, n_samples)
    defects = np.array([sum(abs(v) for v in eval_marching(ms, s, ms.t0)) for s in grid])
    k = int(np.argmax(defects))
    worst = float(defects[k])
    return ConditionVerdict("Iso-3.2", worst <= eps, worst, f"t0={ms.t0:g}", float(grid[k]))


def check_asymptotic_general(
    ms: MarchingScale,
    curve_domain: tuple[float, float],
    n_samples: int = 256,
    eps: float = DEFAULT_TOLERANCES.analytic,
) -> ConditionVerdict:
    """max_s |dy/dt(s, t0)|, valid once the isoparametric condition holds."""
    iso = check_isoparametric(ms, curve_domain, n_samples, eps)
    if not iso.passed:
        raise PreconditionError(
            f"isoparametric condition fails (defect {iso.max_defect:.3e}); the reduction to dy/dt = 0 needs it"
        )
    grid = _grid(curve_domain, n_samples)
    defects = np.array([abs(partials_marching(ms, s, ms.t0).y.dt) for s in grid])
    k = int(np.argmax(defects))
    worst = float(defects[k])
    return ConditionVerdict("Asym-3.4", worst <= eps, worst, "max |dy/dt(s,t0)|", float(grid[k]))


def sufficient_condition_id(ms: MarchingScale) -> str:
    f = ms.form
    if isinstance(f, Product):
        return "Suff-3.5"
    if isinstance(f, Composed):
        return "Suff-3.9"
    if isinstance(f, Polynomial):
        return "Suff-3.7"
    raise TypeError("custom forms have no structural sufficient condition; use check_asymptotic_general")


def _d_dt(e: Expr, t0: float) -> float:
    out = evaluate(e, {"t": Dual2(t0, 1.0, 0.0)})
    return float(out.d1) if isinstance(out, Dual2) else 0.0


def _d_dw(e: Expr, w0: float) -> float:
    out = evaluate(e, {"w": Dual2(w0, 1.0, 0.0)})
    return float(out.d1) if isinstance(out, Dual2) else 0.0


def check_sufficient_form(
    ms: MarchingScale,
    curve_domain: tuple[float, float],
    n_samples: int = 256,
    eps: float = DEFAULT_TOLERANCES.structural,
) -> ConditionVerdict:
    """Structural sufficient condition for the asymptotic requirement.

    Boundary part: X(t0) = Y(t0) = Z(t0) = 0 (and f(0) = g(0) = h(0) = 0 for
    Composed). Disjunction: a2[0] = 0 (Polynomial/Composed), m == 0 on the
    curve samples, g'(0) = 0 (Composed), or dY/dt(t0) = 0.

    The defect is the largest boundary violation when the boundary part
    fails, otherwise the smallest disjunct magnitude (0 when satisfied).
    """
    cid = sufficient_condition_id(ms)
    f = ms.form
    core = f.core if isinstance(f, Composed) else f
    t0 = ms.t0
    boundary = {
        "X(t0)": abs(real(evaluate(core.X, {"t": t0}))),
        "Y(t0)": abs(real(evaluate(core.Y, {"t": t0}))),
        "Z(t0)": abs(real(evaluate(core.Z, {"t": t0}))),
    }
    if isinstance(f, Composed):
        boundary.update(
            {
                "f(0)": abs(real(evaluate(f.f, {"w": 0.0}))),
                "g(0)": abs(real(evaluate(f.g, {"w": 0.0}))),
                "h(0)": abs(real(evaluate(f.h, {"w": 0.0}))),
            }
        )
    bad = {k: v for k, v in boundary.items() if not v <= eps}
    if bad:
        name, worst = max(bad.items(), key=lambda kv: kv[1])
        detail = "boundary condition violated: " + ", ".join(f"{k}={v:.3g}" for k, v in bad.items())
        return ConditionVerdict(cid, False, float(worst), detail)

    grid = _grid(curve_domain, n_samples)
    disjuncts = {}
    if isinstance(core, Polynomial):
        disjuncts["a2_1=0"] = abs(core.a2[0])
    disjuncts["m==0"] = max(abs(real(evaluate(core.m, {"s": float(s)}))) for s in grid)
    if isinstance(f, Composed):
        disjuncts["g'(0)=0"] = abs(_d_dw(f.g, 0.0))
    disjuncts["dY/dt(t0)=0"] = abs(_d_dt(core.Y, t0))
    holding = [k for k, v in disjuncts.items() if v <= eps]
    if holding:
        return ConditionVerdict(cid, True, 0.0, "satisfied via " + " and ".join(holding))
    smallest = min(disjuncts.values())
    detail = "no disjunct holds: " + ", ".join(f"{k}: {v:.3g}" for k, v in disjuncts.items())
    return ConditionVerdict(cid, False, float(smallest), detail)
