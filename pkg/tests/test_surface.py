import math

import numpy as np
import pytest

from nullpencil.curve import NullCurve, build_cartan_frame, evaluate_curve
from nullpencil.lorentz import MVec3, euclidean_norm
from nullpencil.marching import Custom, MarchingScale, Product
from nullpencil.presets import PRESETS
from nullpencil.surface import (
    SurfaceFamilyMember,
    asymptotic_residual,
    evaluate_surface,
    normal_direct,
    normal_ds,
    normal_frame_expansion,
    verify_member,
)

R2 = math.sqrt(2.0)


def member(name, auto=False):
    m = PRESETS[name].scene.member()
    if auto:
        m = SurfaceFamilyMember(m.curve.without_frame(), m.ms, m.n_s, m.n_t)
    return m


def test_evaluate_examples():
    assert euclidean_norm(evaluate_surface(member("ex31a"), 0.0, 1.0) - MVec3(1, 1, 1)) <= 1e-15
    assert euclidean_norm(evaluate_surface(member("ex32"), 0.0, 1.0) - MVec3(0, -R2, 0)) <= 1e-15


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_curve_lies_on_surface(name):
    m = member(name)
    for s in np.linspace(*m.s_domain, 17):
        assert euclidean_norm(evaluate_surface(m, s, m.t0) - evaluate_curve(m.curve, s)) <= 1e-12


@pytest.mark.parametrize("s", np.linspace(0, 2 * math.pi, 5))
@pytest.mark.parametrize("t", [-2.0, 0.0, 0.7])
def test_normal_ex31a(s, t):
    # phi_s = l + t k1 u, phi_t = l, so N = t k1 (u x l) = -t l
    m = member("ex31a")
    l = build_cartan_frame(m.curve, s).l
    assert euclidean_norm(normal_direct(m, s, t) - l * (-t)) <= 1e-14


@pytest.mark.parametrize("s", np.linspace(-4, 4, 5))
def test_normal_ex32_on_curve(s):
    m = member("ex32")
    l = build_cartan_frame(m.curve, s).l
    assert euclidean_norm(normal_direct(m, s, 0.0) - l * R2) <= 1e-13


def test_degenerate_normal_is_zero_vector():
    assert normal_direct(member("ex31a"), 1.0, 0.0) == MVec3(0.0, 0.0, 0.0)


@pytest.mark.parametrize("s", np.linspace(0, 2 * math.pi, 5))
def test_expansion_examples(s):
    ns = normal_frame_expansion(member("ex31b"), s, 0.0)
    assert (ns.phi1, ns.phi2, ns.phi3) == pytest.approx((1.0, 0.0, 0.0), abs=1e-15)
    ns = normal_frame_expansion(member("counterexample"), s, 0.0)
    assert (ns.phi1, ns.phi2, ns.phi3) == pytest.approx((0.0, 0.0, 1.0), abs=1e-15)


def test_two_route_normal_agreement():
    rng = np.random.default_rng(7)
    worst = 0.0
    names = sorted(PRESETS)
    for k in range(1000):
        name = names[k % len(names)]
        m = member(name, auto=(k % 2 == 1))
        s = rng.uniform(*m.s_domain)
        t = rng.uniform(*m.t_domain)
        a = normal_direct(m, s, t)
        b = normal_frame_expansion(m, s, t).N
        worst = max(worst, euclidean_norm(a - b) / (1 + euclidean_norm(a)))
    assert worst <= 1e-10


def test_normal_derivative_against_finite_differences():
    for name in ("ex31b", "ex31d", "ex32", "counterexample"):
        m = member(name)
        lo, hi = m.s_domain
        h = 1e-5 * (hi - lo)
        for s in np.linspace(lo + 0.2, hi - 0.2, 5):
            t = 0.3 * m.t_domain[1]
            _, dN = normal_ds(m, s, t)
            fd = (normal_direct(m, s + h, t) - normal_direct(m, s - h, t)) / (2 * h)
            assert euclidean_norm(dN - fd) <= 1e-4 * (1 + euclidean_norm(dN))


def test_residual_examples():
    _, R, Rr = asymptotic_residual(member("ex31d"), 64)
    assert np.max(np.abs(R)) <= 1e-12 and np.max(np.abs(Rr)) <= 1e-12
    _, R, Rr = asymptotic_residual(member("counterexample"), 64)
    assert np.allclose(np.abs(R), 1.0, atol=1e-12)
    assert np.allclose(R, Rr, atol=1e-12)


def test_y_identically_zero_gives_zero_residual(helix):
    ms = MarchingScale(Custom.from_strings("s*t + t^3", "0", "sin(s)*t^2 - t"), 0.0, (-1, 1))
    _, R, Rr = asymptotic_residual(SurfaceFamilyMember(helix, ms), 32)
    assert np.max(np.abs(R)) <= 1e-12 and np.max(np.abs(Rr)) <= 1e-12


def test_verify_ex32_null_normal():
    rep = verify_member(member("ex32"), n_samples=64)
    assert rep.passed
    assert any("null normal" in w for w in rep.warnings)


def test_verify_ex31a_degenerate_normal():
    rep = verify_member(member("ex31a"), n_samples=64)
    assert rep.passed
    assert any("degenerate normal" in w for w in rep.warnings)


def test_verify_counterexample_fails():
    rep = verify_member(member("counterexample"), n_samples=64)
    assert not rep.passed
    assert rep.verdict("Asym-3.4").max_defect == 1.0
    assert not rep.item("residual R=<dN/ds,l>").passed
    assert "Asym-3.4" in rep.failures()


def test_verify_turns_errors_into_failed_items():
    line = NullCurve.from_strings(["s", "s", "0"], [0, 1])
    ms = MarchingScale(Product.from_strings("1", "0", "0", "t", "0", "0"), 0.0, (0, 1))
    rep = verify_member(SurfaceFamilyMember(line, ms), n_samples=8)
    assert not rep.passed
    assert "frame construction" in rep.failures()


def test_verify_non_isoparametric_reports_precondition():
    ms = MarchingScale(Custom.from_strings("t+1", "t", "0"), 0.0, (-1, 1))
    rep = verify_member(SurfaceFamilyMember(member("ex31a").curve, ms), n_samples=16)
    assert not rep.passed
    assert not rep.verdict("Iso-3.2").passed
    assert "Asym-3.4 precondition" in rep.failures()


def test_member_grid_validation(helix):
    ms = MarchingScale(Product.from_strings("1", "0", "0", "t", "0", "0"), 0.0, (0, 1))
    with pytest.raises(ValueError):
        SurfaceFamilyMember(helix, ms, 1, 5)
