"""Null curves, Cartan frames and frame validation.

A :class:`NullCurve` carries its components as expressions in ``s``. The
Cartan frame {l, n, u} is either given analytically or built automatically:

    l = a',  u = l' / |l'|,  n = p l + q u + r m

where ``m`` is a fixed auxiliary vector with <m, l> != 0 and (p, q, r) solve
<n, l> = -1, <n, u> = 0, <n, n> = 0. Derivatives always come from dual
numbers; finite differences appear only as cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import CurveError
from .exprlang import Expr, eval_dual, evaluate, parse
from .exprlang.dual import Dual2, real
from .lorentz import (
    MVec3,
    det3,
    euclidean_norm,
    first_of,
    lorentz_cross,
    minkowski_inner,
    pseudo_norm,
    second_of,
    value_of,
)
from .report import VerificationItem, item_from_samples

__all__ = [
    "AnalyticFrame",
    "NullCurve",
    "CartanFrameSample",
    "evaluate_curve",
    "curve_position",
    "curve_derivatives",
    "frame_vectors",
    "check_null",
    "build_cartan_frame",
    "validate_frame",
    "k2_least_squares",
    "sample_grid",
    "AUX_VECTORS",
]

AUX_VECTORS = (MVec3(1.0, 0.0, 0.0), MVec3(0.0, 1.0, 0.0))
_AUX_MIN = 1e-9
_DOMAIN_SLACK = 1e-12


def _vec3_exprs(items: Sequence[str | Expr], variables=("s",)) -> tuple[Expr, Expr, Expr]:
    if len(items) != 3:
        raise ValueError("a vector needs exactly three components")
    return tuple(parse(x, variables) if isinstance(x, str) else x for x in items)  # type: ignore[return-value]


@dataclass(frozen=True)
class AnalyticFrame:
    l: tuple[Expr, Expr, Expr]
    n: tuple[Expr, Expr, Expr]
    u: tuple[Expr, Expr, Expr]

    @classmethod
    def from_strings(cls, l, n, u) -> "AnalyticFrame":
        return cls(_vec3_exprs(l), _vec3_exprs(n), _vec3_exprs(u))


@dataclass(frozen=True)
class NullCurve:
    components: tuple[Expr, Expr, Expr]
    domain: tuple[float, float]
    frame: AnalyticFrame | None = None  # None: automatic Cartan frame

    def __post_init__(self):
        lo, hi = self.domain
        if not lo < hi:
            raise ValueError(f"curve domain must satisfy L1 < L2, got {self.domain}")

    @classmethod
    def from_strings(cls, components, domain, frame=None) -> "NullCurve":
        if frame is not None and not isinstance(frame, AnalyticFrame):
            frame = AnalyticFrame.from_strings(frame["l"], frame["n"], frame["u"])
        return cls(_vec3_exprs(components), (float(domain[0]), float(domain[1])), frame)

    @property
    def auto_frame(self) -> bool:
        return self.frame is None

    def without_frame(self) -> "NullCurve":
        return NullCurve(self.components, self.domain, None)


@dataclass(frozen=True)
class CartanFrameSample:
    s: float
    l: MVec3
    n: MVec3
    u: MVec3
    k1: float
    k2: float
    dl: MVec3
    dn: MVec3
    du: MVec3


def sample_grid(domain: tuple[float, float], n_samples: int) -> np.ndarray:
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    return np.linspace(domain[0], domain[1], n_samples)


def _vec(exprs, s) -> MVec3:
    return MVec3(*(evaluate(e, {"s": s}) for e in exprs))


def curve_position(c: NullCurve, s) -> MVec3:
    """a(s) for float or dual ``s`` (no domain check)."""
    return _vec(c.components, s)


def _check_domain(c: NullCurve, s: float) -> None:
    lo, hi = c.domain
    slack = _DOMAIN_SLACK * max(1.0, hi - lo)
    if not (lo - slack <= s <= hi + slack):
        raise CurveError(f"s={s!r} outside curve domain [{lo}, {hi}]")


def evaluate_curve(c: NullCurve, s: float) -> MVec3:
    _check_domain(c, s)
    return MVec3(*(float(evaluate(e, {"s": float(s)})) for e in c.components)).map(float)


def curve_derivatives(c: NullCurve, s: float) -> tuple[MVec3, MVec3, MVec3]:
    """(a, a', a'') at ``s`` from dual numbers."""
    jets = [eval_dual(e, "s", s=s) for e in c.components]
    return (
        MVec3(*(j.value for j in jets)),
        MVec3(*(j.d1 for j in jets)),
        MVec3(*(j.d2 for j in jets)),
    )


def _auto_frame(c: NullCurve, s, eps_k: float) -> tuple[MVec3, MVec3, MVec3]:
    jet = curve_position(c, Dual2(s, 1.0, 0.0))
    l = first_of(jet)
    dl = second_of(jet)
    k1 = pseudo_norm(dl)
    if real(k1) <= eps_k:
        raise CurveError(f"assumption |a''| != 0 violated at s={real(s):.6g} (k1={real(k1):.3e})")
    u = dl / k1
    for m in AUX_VECTORS:
        ml = minkowski_inner(m, l)
        if abs(real(ml)) > _AUX_MIN:
            break
    else:
        raise CurveError(f"no usable auxiliary vector at s={real(s):.6g}: <m, l> ~ 0 for all defaults")
    mu = minkowski_inner(m, u)
    mm = minkowski_inner(m, m)
    r = -1.0 / ml
    q = -r * mu
    p = -(q * q + 2.0 * q * r * mu + r * r * mm) / (2.0 * r * ml)
    n = l * p + u * q + m * r
    return l, n, u


def frame_vectors(c: NullCurve, s, eps_k: float = DEFAULT_TOLERANCES.k1) -> tuple[MVec3, MVec3, MVec3]:
    """(l, n, u) at float or dual ``s``."""
    if c.frame is None:
        return _auto_frame(c, s, eps_k)
    f = c.frame
    return _vec(f.l, s), _vec(f.n, s), _vec(f.u, s)


def _frame_jets(c: NullCurve, s: float, eps_k: float):
    l, n, u = frame_vectors(c, Dual2(float(s), 1.0, 0.0), eps_k)
    return l, n, u


def build_cartan_frame(c: NullCurve, s: float, eps_k: float = DEFAULT_TOLERANCES.k1) -> CartanFrameSample:
    """Frame, curvatures and frame derivatives at ``s``.

    k1 = |l'| and k2 = -<n', u>. For analytic frames the k1 precondition is
    checked on l'; for automatic frames on a''.
    """
    _check_domain(c, s)
    l, n, u = _frame_jets(c, s, eps_k)
    lv, nv, uv = (value_of(v).map(float) for v in (l, n, u))
    dl, dn, du = (first_of(v).map(float) for v in (l, n, u))
    k1 = float(pseudo_norm(dl))
    if k1 <= eps_k:
        raise CurveError(f"assumption |a''| != 0 violated at s={s:.6g} (k1={k1:.3e})")
    k2 = float(-minkowski_inner(dn, uv))
    return CartanFrameSample(float(s), lv, nv, uv, k1, k2, dl, dn, du)


def k2_least_squares(fs: CartanFrameSample) -> float:
    """k2 minimising the Euclidean size of u' + k2 l - k1 n."""
    a = np.array((fs.du - fs.n * fs.k1).tuple())
    b = np.array(fs.l.tuple())
    return float(-np.dot(a, b) / np.dot(b, b))


def check_null(c: NullCurve, n_samples: int = 256, eps: float = DEFAULT_TOLERANCES.null) -> VerificationItem:
    """max |<a'(s), a'(s)>| over a uniform grid."""
    grid = sample_grid(c.domain, n_samples)
    defects = []
    for s in grid:
        _, d1, _ = curve_derivatives(c, float(s))
        defects.append(float(minkowski_inner(d1, d1)))
    return item_from_samples("nullity <a',a'>=0", grid, defects, eps)


def _frame_defects(c: NullCurve, fs: CartanFrameSample) -> dict[str, float]:
    l, n, u = fs.l, fs.n, fs.u
    k1, k2 = fs.k1, fs.k2
    ip = minkowski_inner
    out = {
        "<l,l>=0": ip(l, l),
        "<n,n>=0": ip(n, n),
        "<u,u>=1": ip(u, u) - 1.0,
        "<l,n>=-1": ip(l, n) + 1.0,
        "<l,u>=0": ip(l, u),
        "<n,u>=0": ip(n, u),
        "frenet l'=k1 u": euclidean_norm(fs.dl - u * k1),
        "frenet n'=-k2 u": euclidean_norm(fs.dn + u * k2),
        "frenet u'=-k2 l+k1 n": euclidean_norm(fs.du + l * k2 - n * k1),
        "cross l x n = u": euclidean_norm(lorentz_cross(l, n) - u),
        "cross n x u = -n": euclidean_norm(lorentz_cross(n, u) + n),
        "cross l x u = l": euclidean_norm(lorentz_cross(l, u) - l),
        "|det(l,n,u)|-1": abs(det3(l, n, u)) - 1.0,
    }
    if c.frame is not None:
        _, d1, _ = curve_derivatives(c, fs.s)
        out["tangent l=a'"] = euclidean_norm(l - d1)
    return out


def validate_frame(
    c: NullCurve,
    n_samples: int = 256,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[list[VerificationItem], list[str], dict[str, float]]:
    """Frame defects over a uniform grid.

    Returns ``(items, warnings, info)``. ``info`` carries the sign of
    det(l, n, u) and the k2 cross-check, which are reported, not enforced.
    """
    grid = sample_grid(c.domain, n_samples)
    table: dict[str, list[float]] = {}
    dets, nu, k2_gap = [], [], []
    for s in grid:
        fs = build_cartan_frame(c, float(s), tol.k1)
        for k, v in _frame_defects(c, fs).items():
            table.setdefault(k, []).append(float(v))
        dets.append(det3(fs.l, fs.n, fs.u))
        nu.append(float(minkowski_inner(fs.n, fs.u)))
        k2_gap.append(abs(k2_least_squares(fs) - fs.k2))
    items = [item_from_samples(f"frame {k}", grid, v, tol.frame) for k, v in table.items()]
    items.append(
        item_from_samples("k2 two-way agreement", grid, k2_gap, tol.analytic, mandatory=False)
    )
    warnings = []
    if np.all(np.abs(np.asarray(nu) - 1.0) <= tol.frame):
        warnings.append("frame has <n,u> = 1 throughout (printed value); validated against 0")
    det_arr = np.asarray(dets)
    if np.any(det_arr < 0):
        warnings.append("det(l,n,u) negative at some samples")
    info = {"det(l,n,u) min": float(det_arr.min()), "det(l,n,u) max": float(det_arr.max())}
    return items, warnings, info
