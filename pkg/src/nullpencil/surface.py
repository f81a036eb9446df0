"""Surface-family members, normals by two routes, and the asymptotic residuals.

A member is phi(s, t) = a(s) + x l(s) + y n(s) + z u(s). The normal is
computed two ways:

* :func:`normal_direct` -- N = phi_s x phi_t with both partials from dual
  numbers pushed through the curve, the frame and the marching functions.
* :func:`normal_frame_expansion` -- the closed-form coefficients of N in the
  frame {l, n, u}, built from marching partials and k1, k2 only.

The direct residual R(s) = <dN/ds(s, t0), l(s)> differentiates the direct
normal once more in s; the reduced residual is -(d(phi2)/ds + k1 phi3) at t0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_SAMPLES, DEFAULT_TOLERANCES, Tolerances
from .curve import (
    NullCurve,
    build_cartan_frame,
    check_null,
    curve_derivatives,
    curve_position,
    frame_vectors,
    sample_grid,
    validate_frame,
)
from .errors import NullPencilError, PreconditionError
from .exprlang.dual import Dual2
from .lorentz import (
    CausalCharacter,
    MVec3,
    causal_character,
    euclidean_norm,
    first_of,
    lorentz_cross,
    minkowski_inner,
)
from .marching import (
    MarchingScale,
    Custom,
    check_asymptotic_general,
    check_isoparametric,
    check_sufficient_form,
    marching_components,
    partials_marching,
)
from .report import VerificationItem, VerificationReport, SampleRow, item_from_samples

__all__ = [
    "SurfaceFamilyMember",
    "NormalSample",
    "evaluate_surface",
    "surface_grid",
    "normal_direct",
    "normal_ds",
    "normal_frame_expansion",
    "reduced_coefficients",
    "asymptotic_residual",
    "verify_member",
]


@dataclass(frozen=True)
class SurfaceFamilyMember:
    curve: NullCurve
    ms: MarchingScale
    n_s: int = 64
    n_t: int = 32

    def __post_init__(self):
        if self.n_s < 2 or self.n_t < 2:
            raise ValueError(f"grid must be at least 2x2, got {self.n_s}x{self.n_t}")

    @property
    def s_domain(self) -> tuple[float, float]:
        return self.curve.domain

    @property
    def t_domain(self) -> tuple[float, float]:
        return self.ms.t_domain

    @property
    def t0(self) -> float:
        return self.ms.t0

    def s_grid(self) -> np.ndarray:
        return np.linspace(*self.s_domain, self.n_s)

    def t_grid(self) -> np.ndarray:
        return np.linspace(*self.t_domain, self.n_t)


@dataclass(frozen=True)
class NormalSample:
    s: float
    t: float
    N: MVec3
    phi1: float
    phi2: float
    phi3: float


def _phi(member: SurfaceFamilyMember, s, t) -> MVec3:
    l, n, u = frame_vectors(member.curve, s)
    x, y, z = marching_components(member.ms, s, t)
    return curve_position(member.curve, s) + l * x + n * y + u * z


def evaluate_surface(member: SurfaceFamilyMember, s: float, t: float) -> MVec3:
    return _phi(member, float(s), float(t)).map(float)


def surface_grid(member: SurfaceFamilyMember) -> np.ndarray:
    """(n_s, n_t, 3) array of surface points, s-major."""
    out = np.empty((member.n_s, member.n_t, 3))
    for i, s in enumerate(member.s_grid()):
        l, n, u = frame_vectors(member.curve, float(s))
        a = curve_position(member.curve, float(s))
        for j, t in enumerate(member.t_grid()):
            x, y, z = marching_components(member.ms, float(s), float(t))
            out[i, j] = (a + l * x + n * y + u * z).tuple()
    return out


def _normal(member: SurfaceFamilyMember, s, t: float) -> MVec3:
    # the new s-seed sits outside whatever ``s`` already carries; the t-seed
    # is outermost, with ``s`` wrapped as its value
    phi_s = first_of(_phi(member, Dual2(s, 1.0, 0.0), t))
    phi_t = first_of(_phi(member, Dual2(s, 0.0, 0.0), Dual2(t, 1.0, 0.0)))
    return lorentz_cross(phi_s, phi_t)


def normal_direct(member: SurfaceFamilyMember, s: float, t: float) -> MVec3:
    """N = phi_s x phi_t."""
    return _normal(member, float(s), float(t)).map(float)


def normal_ds(member: SurfaceFamilyMember, s: float, t: float) -> tuple[MVec3, MVec3]:
    """(N, dN/ds) at (s, t) by differentiating the direct normal."""
    N = _normal(member, Dual2(float(s), 1.0, 0.0), float(t))
    value = MVec3(*(c.value if isinstance(c, Dual2) else c for c in N)).map(float)
    return value, first_of(N).map(float)


def normal_frame_expansion(member: SurfaceFamilyMember, s: float, t: float) -> NormalSample:
    """Frame coefficients of N at any (s, t).

    With A = 1 + x_s - z k2, B = y_s + z k1, C = z_s + x k1 - y k2:
    N = (A z_t - C x_t) l + (C y_t - B z_t) n + (A y_t - B x_t) u.
    """
    fs = build_cartan_frame(member.curve, float(s))
    p = partials_marching(member.ms, s, t)
    x, y, z = p.x, p.y, p.z
    k1, k2 = fs.k1, fs.k2
    A = 1.0 + x.ds - z.value * k2
    B = y.ds + z.value * k1
    C = z.ds + x.value * k1 - y.value * k2
    c1 = A * z.dt - C * x.dt
    c2 = C * y.dt - B * z.dt
    c3 = A * y.dt - B * x.dt
    N = fs.l * c1 + fs.n * c2 + fs.u * c3
    return NormalSample(float(s), float(t), N, c1, c2, c3)


def reduced_coefficients(member: SurfaceFamilyMember, s: float) -> tuple[float, float, float, float]:
    """(phi1, phi2, phi3, d(phi2)/ds) at (s, t0) from marching partials alone."""
    p = partials_marching(member.ms, s, member.t0)
    x, y, z = p.x, p.y, p.z
    phi1 = (1.0 + x.ds) * z.dt - z.ds * x.dt
    phi2 = z.ds * y.dt - y.ds * z.dt
    phi3 = (1.0 + x.ds) * y.dt - y.ds * x.dt
    dphi2 = z.dss * y.dt + z.ds * y.dst - y.dss * z.dt - y.ds * z.dst
    return phi1, phi2, phi3, dphi2


def asymptotic_residual(member: SurfaceFamilyMember, n_samples: int = DEFAULT_SAMPLES):
    """Sampled (s, R, R_reduced) along t = t0.

    Both residuals assume the isoparametric condition; without it they are
    still computed but need not agree.
    """
    grid = sample_grid(member.s_domain, n_samples)
    R = np.empty(n_samples)
    Rr = np.empty(n_samples)
    for i, s in enumerate(grid):
        fs = build_cartan_frame(member.curve, float(s))
        _, dN = normal_ds(member, float(s), member.t0)
        R[i] = minkowski_inner(dN, fs.l)
        _, _, phi3, dphi2 = reduced_coefficients(member, float(s))
        Rr[i] = -(dphi2 + fs.k1 * phi3)
    return grid, R, Rr


def _fd_residual(member: SurfaceFamilyMember, s: float, l: MVec3) -> float:
    lo, hi = member.s_domain
    h = 1e-5 * (hi - lo)
    Np = _normal(member, s + h, member.t0).map(float)
    Nm = _normal(member, s - h, member.t0).map(float)
    return float(minkowski_inner((Np - Nm) / (2.0 * h), l))


def _failed(name: str, exc: Exception, tol: float) -> VerificationItem:
    return VerificationItem(name, False, math.inf, tol, math.inf, None, f"error: {exc}")


def verify_member(
    member: SurfaceFamilyMember,
    tol: Tolerances = DEFAULT_TOLERANCES,
    n_samples: int = DEFAULT_SAMPLES,
    title: str = "",
) -> VerificationReport:
    """Run every check on a member and aggregate; errors become failed items."""
    rep = VerificationReport(title=title)
    curve, ms = member.curve, member.ms

    try:
        rep.items.append(check_null(curve, n_samples, tol.null))
    except NullPencilError as exc:
        rep.items.append(_failed("nullity <a',a'>=0", exc, tol.null))

    try:
        items, warns, info = validate_frame(curve, n_samples, tol)
        rep.items += items
        rep.warnings += warns
        rep.info.update(info)
    except NullPencilError as exc:
        rep.items.append(_failed("frame construction", exc, tol.frame))
        return rep

    try:
        iso = check_isoparametric(ms, curve.domain, n_samples, tol.analytic)
    except NullPencilError as exc:
        rep.items.append(_failed("Iso-3.2", exc, tol.analytic))
        return rep
    rep.verdicts.append(iso)

    suff = None
    if not isinstance(ms.form, Custom):
        try:
            suff = check_sufficient_form(ms, curve.domain, n_samples, tol.structural)
            rep.advisory_verdicts.append(suff)
        except NullPencilError as exc:
            rep.warnings.append(f"sufficient-condition check failed to run: {exc}")

    try:
        asym = check_asymptotic_general(ms, curve.domain, n_samples, tol.analytic)
        rep.verdicts.append(asym)
    except PreconditionError as exc:
        asym = None
        rep.items.append(
            VerificationItem("Asym-3.4 precondition", False, iso.max_defect, tol.analytic, detail=str(exc))
        )
    except NullPencilError as exc:
        asym = None
        rep.items.append(_failed("Asym-3.4", exc, tol.analytic))

    if suff is not None and asym is not None and suff.passed and not asym.passed:
        rep.warnings.append(f"{suff.condition_id} passed but Asym-3.4 failed: structural check unsound here")
    if suff is not None and asym is not None and asym.passed and not suff.passed:
        rep.warnings.append(f"Asym-3.4 holds although {suff.condition_id} does not (sufficient only)")

    try:
        rows, law = _sample_rows(member, n_samples)
    except NullPencilError as exc:
        rep.items.append(_failed("residual sampling", exc, tol.analytic))
        return rep
    rep.rows = rows
    s = np.array([r.s for r in rows])
    R = np.array([r.residual_direct for r in rows])
    Rr = np.array([r.residual_reduced for r in rows])
    rep.items.append(item_from_samples("residual R=<dN/ds,l>", s, R, tol.analytic))
    rep.items.append(item_from_samples("reduced residual", s, Rr, tol.analytic))
    rep.items.append(item_from_samples("|R - R_reduced|", s, R - Rr, tol.analytic, "reduction identity"))
    rep.items.append(
        item_from_samples("FD check dN/ds", s, R - law["fd"], tol.fd, "central differences", mandatory=False)
    )
    rep.items.append(item_from_samples("curve on surface", s, law["on_curve"], tol.analytic))
    if iso.passed and asym is not None and asym.passed:
        rep.items.append(item_from_samples("null-normal N=phi1 l", s, law["phi1_gap"], tol.frame))
        rep.items.append(item_from_samples("null-normal <N,N>=0", s, law["NN"], tol.frame))
        rep.items.append(item_from_samples("<N,a''>=0", s, law["N_acc"], tol.analytic))

    norms = np.array([r.normal_norm for r in rows])
    chars = law["chars"]
    if np.any(norms <= 1e-12):
        where = s[norms <= 1e-12]
        rep.warnings.append(
            f"degenerate normal at t0: |N| <= 1e-12 at {where.size}/{s.size} samples (first s={where[0]:.6g})"
        )
    nondeg = norms > 1e-12
    if np.any(nondeg) and all(c is CausalCharacter.NULL for c, ok in zip(chars, nondeg) if ok):
        rep.warnings.append("null normal along curve: N(s,t0) is lightlike wherever nonzero")
    rep.info["max |N(s,t0)|"] = float(norms.max())
    return rep


def _sample_rows(member: SurfaceFamilyMember, n_samples: int):
    grid = sample_grid(member.s_domain, n_samples)
    rows = []
    law = {k: [] for k in ("fd", "on_curve", "phi1_gap", "NN", "N_acc", "chars")}
    for s in grid:
        s = float(s)
        fs = build_cartan_frame(member.curve, s)
        N, dN = normal_ds(member, s, member.t0)
        phi1, phi2, phi3, dphi2 = reduced_coefficients(member, s)
        R = float(minkowski_inner(dN, fs.l))
        Rr = -(dphi2 + fs.k1 * phi3)
        _, d1, d2 = curve_derivatives(member.curve, s)
        rows.append(
            SampleRow(
                s=s,
                phi1=phi1,
                phi2=phi2,
                phi3=phi3,
                residual_direct=R,
                residual_reduced=Rr,
                null_defect=abs(float(minkowski_inner(d1, d1))),
                normal_norm=euclidean_norm(N),
            )
        )
        law["fd"].append(_fd_residual(member, s, fs.l))
        on = evaluate_surface(member, s, member.t0) - curve_position(member.curve, s)
        law["on_curve"].append(euclidean_norm(on))
        law["phi1_gap"].append(euclidean_norm(N - fs.l * phi1))
        law["NN"].append(float(minkowski_inner(N, N)))
        law["N_acc"].append(float(minkowski_inner(N, d2)))
        law["chars"].append(causal_character(N))
    return rows, law
