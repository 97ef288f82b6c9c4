import numpy as np
import pytest
from scipy.optimize import brentq

from conftest import ACCEPT_EPS
from thinlayer import (DomainError, ResonanceError, SphereGeometry, fit_rate, manufactured_forcing,
                       multiscale_terms, remainder, resonance_margin, solve_ec, solve_transmission)
from thinlayer.elastic_modes import traction_matrix
from thinlayer.solvers import (_normalized_det, closed_form_profile, ec_defect,
                               integrated_profile, solve_traction_data)


def _fields_equal(u, v, tol=1e-12):
    scale = max(abs(u.A), abs(u.B), 1.0)
    return (abs(u.A - v.A) <= tol * scale and abs(u.B - v.B) <= tol * scale
            and u.forcing_weight == v.forcing_weight)


@pytest.mark.parametrize("l", [0, 1, 2, 5])
def test_boundary_residuals_machine_scale(mat, forcing_for, l):
    for eps in (0.2, 0.05, 0.00625):
        sol = solve_transmission(mat, SphereGeometry(1.0, eps), l, forcing_for(l))
        scale = np.abs(sol.matrix).max()
        assert np.all(np.abs(sol.boundary_residuals()) < 1e-10 * scale)


def test_boundary_residuals_random_draws(mat):
    rng = np.random.default_rng(3)
    for _ in range(20):
        m = mat.replace(rho_s=rng.uniform(0.5, 2), lam=rng.uniform(0.5, 3), mu=rng.uniform(0.5, 2),
                        rho_f=rng.uniform(0.1, 1), c=rng.uniform(0.5, 2), omega=rng.uniform(0.5, 2))
        l = int(rng.integers(0, 9))
        eps = rng.uniform(0.01, 0.3)
        try:
            sol = solve_transmission(m, SphereGeometry(1.0, eps), l, manufactured_forcing(m, l, 1.0))
        except ResonanceError:
            continue
        assert np.all(np.abs(sol.boundary_residuals()) < 1e-10 * np.abs(sol.matrix).max())


def test_transmission_rejects_zero_thickness(mat, forcing_for):
    with pytest.raises(DomainError):
        solve_transmission(mat, SphereGeometry(1.0, 0.0), 1, forcing_for(1))


def test_forcing_mismatch(mat, forcing_for):
    with pytest.raises(DomainError):
        solve_transmission(mat, SphereGeometry(1.0, 0.1), 2, forcing_for(1))


def test_no_fluid_decouples(mat):
    dry = mat.replace(rho_f=0.0)
    for l in (0, 2):
        frc = manufactured_forcing(dry, l, 1.0)
        sol = solve_transmission(dry, SphereGeometry(1.0, 0.1), l, frc)
        assert _fields_equal(sol.solid, solve_ec(0, dry, 1.0, 0.1, l, frc))
        assert sol.fluid.a == 0.0 and sol.fluid.b == 0.0


def test_zero_thickness_ec_is_background(mat, forcing_for):
    for l in (0, 3):
        frc = forcing_for(l)
        u0 = solve_ec(0, mat, 1.0, 0.1, l, frc)
        for k in (1, 2, 3):
            assert _fields_equal(solve_ec(k, mat, 1.0, 0.0, l, frc), u0, 0.0)


def test_order_zero_is_thickness_independent(mat, forcing_for):
    frc = forcing_for(2)
    ref = solve_ec(0, mat, 1.0, 0.2, 2, frc)
    for eps in ACCEPT_EPS:
        assert _fields_equal(solve_ec(0, mat, 1.0, eps, 2, frc), ref, 0.0)


def test_first_order_rate(mat, forcing_for):
    from thinlayer import solid_error_norm
    frc = forcing_for(1)
    errs = [solid_error_norm(solve_transmission(mat, SphereGeometry(1.0, e), 1, frc).solid,
                             solve_ec(1, mat, 1.0, e, 1, frc)).value for e in ACCEPT_EPS]
    assert 1.8 <= fit_rate(ACCEPT_EPS, errs).slope <= 2.5


def test_amplitude_linearity(mat):
    for l in (0, 2):
        f1 = manufactured_forcing(mat, l, 1.0)
        f3 = manufactured_forcing(mat, l, -3.0)
        g = SphereGeometry(1.0, 0.05)
        s1, s3 = solve_transmission(mat, g, l, f1), solve_transmission(mat, g, l, f3)
        for a, b in ((s1.solid.A, s3.solid.A), (s1.solid.B, s3.solid.B),
                     (s1.fluid.a, s3.fluid.a), (s1.fluid.b, s3.fluid.b)):
            assert b == pytest.approx(-3 * a, rel=1e-12, abs=1e-14)
        e1, e3 = solve_ec(3, mat, 1.0, 0.05, l, f1), solve_ec(3, mat, 1.0, 0.05, l, f3)
        assert e3.A == pytest.approx(-3 * e1.A, rel=1e-12)


# --- resonance ---------------------------------------------------------------


def test_margin_is_scale_free():
    M = np.array([[1.3, -0.2], [0.7, 2.1]])
    base = _normalized_det(M, 1)
    scaled = np.diag([10.0, 0.01]) @ M @ np.diag([1e3, 2e-2])
    assert _normalized_det(scaled, 1) == pytest.approx(base, rel=1e-14)


def test_acceptance_margins(mat):
    for l in (0, 1, 2, 5):
        assert resonance_margin(mat, l) > 1e-3


def _signed(mat, l, omega):
    M = traction_matrix(mat.replace(omega=omega), l, 1.0)
    return (M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]) / (abs(M[0, 0] * M[1, 1]) + abs(M[0, 1] * M[1, 0]))


def test_resonance_is_reported(mat):
    l = 2
    w = np.linspace(0.5, 6.0, 400)
    s = np.array([_signed(mat, l, x) for x in w])
    i = int(np.nonzero(np.sign(s[:-1]) != np.sign(s[1:]))[0][0])
    w_star = brentq(lambda x: _signed(mat, l, x), w[i], w[i + 1], xtol=1e-15, rtol=1e-15)
    bad = mat.replace(omega=w_star)
    assert resonance_margin(bad, l) < 1e-10
    with pytest.raises(ResonanceError) as info:
        solve_ec(0, bad, 1.0, 0.1, l, manufactured_forcing(bad, l, 1.0))
    assert info.value.degree == l


# --- multiscale expansion ----------------------------------------------------


@pytest.mark.parametrize("l", [0, 1, 2, 5])
def test_profiles_closed_vs_integrated(mat, unit_sphere, forcing_for, l):
    a = multiscale_terms(mat, unit_sphere, l, forcing_for(l), 3, "closed")
    b = multiscale_terms(mat, unit_sphere, l, forcing_for(l), 3, "integrated")
    for n in range(4):
        pa, pb = a.profiles[n].coef, b.profiles[n].coef
        size = max(len(pa), len(pb))
        pa, pb = np.pad(pa, (0, size - len(pa))), np.pad(pb, (0, size - len(pb)))
        assert np.max(np.abs(pa - pb)) <= 1e-12 * max(1.0, np.max(np.abs(pa)))


def test_profile_boundary_values(mat, unit_sphere, forcing_for):
    exp = multiscale_terms(mat, unit_sphere, 2, forcing_for(2), 3)
    assert not np.any(exp.profiles[0].coef)
    for n in range(1, 4):
        P = exp.profiles[n]
        assert abs(P(1.0)) < 1e-13 * max(1, np.abs(P.coef).max())
        assert P.deriv(1)(0.0) == pytest.approx(mat.coupling * exp.traces[n - 1], rel=1e-13)
        assert P.degree() <= n


def test_first_profile_formula(mat, unit_sphere, forcing_for):
    exp = multiscale_terms(mat, unit_sphere, 1, forcing_for(1), 1)
    u0n = exp.traces[0]
    assert exp.profiles[1](1.0) == 0.0
    assert exp.profiles[1](0.0) == pytest.approx(-mat.coupling * u0n, rel=1e-15)
    assert exp.traction_datum(1) == pytest.approx(mat.coupling * u0n, rel=1e-15)


def test_expansion_terms_solve_their_traction_problems(mat, unit_sphere, forcing_for):
    from thinlayer import traction
    exp = multiscale_terms(mat, unit_sphere, 2, forcing_for(2), 3)
    trr, trt = traction(exp.solid_terms[0], 1.0)
    assert abs(trr) < 1e-12 and abs(trt) < 1e-12
    for n in (1, 2, 3):
        trr, trt = traction(exp.solid_terms[n], 1.0)
        assert trr == pytest.approx(exp.traction_datum(n), rel=1e-12)
        assert abs(trt) < 1e-12 * abs(trr)


def test_expansion_argument_checks(mat, unit_sphere, forcing_for):
    with pytest.raises(DomainError):
        multiscale_terms(mat, unit_sphere, 2, forcing_for(2), 4)
    with pytest.raises(DomainError):
        closed_form_profile(4, [1, 1, 1, 1], unit_sphere, mat, 2)
    with pytest.raises(DomainError):
        integrated_profile(4, [], [], unit_sphere, mat, 2)
    with pytest.raises(DomainError):
        multiscale_terms(mat, unit_sphere, 2, forcing_for(2), 2, profile_source="other")


def test_remainder_decreases_with_order(mat, unit_sphere, forcing_for):
    for l in (0, 2):
        exp = multiscale_terms(mat, unit_sphere, l, forcing_for(l), 3)
        eps = 0.0125
        sol = solve_transmission(mat, SphereGeometry(1.0, eps), l, forcing_for(l))
        rems = [remainder(sol, exp, eps, N) for N in range(4)]
        assert all(a[0] > b[0] for a, b in zip(rems, rems[1:]))
        assert all(a[1] > b[1] for a, b in zip(rems[1:], rems[2:]))


def test_remainder_without_fluid_is_zero(mat):
    dry = mat.replace(rho_f=0.0)
    frc = manufactured_forcing(dry, 2, 1.0)
    exp = multiscale_terms(dry, SphereGeometry(1.0), 2, frc, 3)
    sol = solve_transmission(dry, SphereGeometry(1.0, 0.1), 2, frc)
    from thinlayer.norms import solid_norm
    solid, fluid = remainder(sol, exp, 0.1, 0)
    assert solid <= 1e-13 * solid_norm(sol.solid) and fluid == 0.0


def test_remainder_checks(mat, unit_sphere, forcing_for):
    exp = multiscale_terms(mat, unit_sphere, 2, forcing_for(2), 1)
    sol = solve_transmission(mat, SphereGeometry(1.0, 0.1), 2, forcing_for(2))
    with pytest.raises(DomainError):
        remainder(sol, exp, 0.1, 2)
    with pytest.raises(DomainError):
        remainder(sol, exp, 0.05, 1)
    other = solve_transmission(mat, SphereGeometry(1.0, 0.1), 1, forcing_for(1))
    with pytest.raises(DomainError):
        remainder(other, exp, 0.1, 1)


def test_traction_data_solver(mat):
    u = solve_traction_data(mat, 3, 1.0, 0.7, -0.2)
    from thinlayer import traction
    trr, trt = traction(u, 1.0)
    assert trr == pytest.approx(0.7, rel=1e-12) and trt == pytest.approx(-0.2, rel=1e-12)


# --- construction defects ----------------------------------------------------


def test_defect_formulas(mat, unit_sphere, forcing_for):
    l = 2
    exp = multiscale_terms(mat, unit_sphere, l, forcing_for(l), 3)
    U = exp.traces
    w, H, K = mat.coupling, 1.0, 1.0
    c = (4 * H**2 - K - l * (l + 1) + mat.kappa**2) / 3
    for eps in (0.1, 0.02):
        d1 = -eps**2 * w * U[1]
        d2 = -eps**3 * w * U[2] + eps**3 * H * w * (U[1] + eps * U[2])
        d3 = -eps**4 * w * ((U[3] - H * (U[2] + eps * U[3])) + c * (U[1] + eps * U[2] + eps**2 * U[3]))
        for k, d in ((1, d1), (2, d2), (3, d3)):
            assert ec_defect(k, exp, eps, unit_sphere, mat) == pytest.approx(d, rel=1e-10)


def test_defect_rates(mat, unit_sphere, forcing_for):
    grid = 0.1 * 0.5 ** np.arange(6)
    for l in (0, 1, 2, 5):
        exp = multiscale_terms(mat, unit_sphere, l, forcing_for(l), 3)
        for k in (1, 2, 3):
            d = [abs(ec_defect(k, exp, e, unit_sphere, mat)) for e in grid]
            assert fit_rate(grid, d).slope >= k + 0.8
