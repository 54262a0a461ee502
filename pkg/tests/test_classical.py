"""Classical orbits: constants, closed forms and the Newtonian ODE as oracle."""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coulomb_traj import classical
from coulomb_traj.classical import Branch, Coordinates, Scenario, _turning_rho
from coulomb_traj.constants import sommerfeld, time_unit, wavenumber
from coulomb_traj.errors import DomainError, NoSignChange, SingularityApproach
from coulomb_traj.numerics import (Bracket, OdeState, angular_momentum_per_mass, central_difference,
                                   deflection_run, energy_per_mass, integrate_newton, scan_roots,
                                   solve_bracketed, speed_for_energy)

finite = dict(allow_nan=False, allow_infinity=False)
energies = st.floats(5.0, 5000.0, **finite)
charges = st.sampled_from([-6, -1, 1, 2, 6, 29])
impacts = st.floats(0.2, 20.0, **finite)


# ------------------------------------------------------------ constants
def test_constants_at_20_ev():
    assert wavenumber(20.0) == pytest.approx(0.0229115, rel=2e-6)
    assert sommerfeld(20.0, 1) == pytest.approx(0.824794, rel=2e-6)
    assert sommerfeld(2000.0, 6) == pytest.approx(0.494876, rel=2e-6)
    assert wavenumber(2000.0) == pytest.approx(0.229115, rel=2e-6)
    # hbar / 2E
    assert time_unit(20.0) == pytest.approx(6.582119569e-16 / 40.0, rel=1e-9)


@given(energies, charges)
def test_sommerfeld_scaling(e, z):
    assert sommerfeld(4 * e, z) == pytest.approx(0.5 * sommerfeld(e, z), rel=1e-13)
    assert sommerfeld(e, 2 * z) == pytest.approx(2 * sommerfeld(e, z), rel=1e-13)
    assert wavenumber(4 * e) == pytest.approx(2 * wavenumber(e), rel=1e-13)


def test_scenario_validation():
    with pytest.raises(DomainError):
        Scenario(-1.0, 1)
    with pytest.raises(DomainError):
        Scenario(20.0, 0)
    with pytest.raises(DomainError):
        classical.ClassicalOrbitParams.from_ks(Scenario(20.0, 1), 0.0)


# ------------------------------------------------------------ orbits
@given(energies, charges, impacts)
def test_turning_radii_are_roots(e, z, ks):
    sc = Scenario(e, z)
    r1, r2 = classical.turning_radii(sc, ks)
    assert r1 > 0 > r2
    for r in (r1, r2):
        rho = r * sc.k
        # rho^2 + 2 eta rho - ks^2 = 0
        assert abs(rho * rho + 2 * sc.eta_s * rho - ks * ks) <= 1e-12 * (rho * rho + ks * ks)


@given(energies, charges, impacts)
def test_angle_two_routes_agree(e, z, ks):
    sc = Scenario(e, z)
    a = classical.scattering_angle_classical(sc, ks)
    b = classical.scattering_angle_from_radii(sc, ks)
    assert abs(a - b) <= 1e-12
    assert math.copysign(1.0, a) == -math.copysign(1.0, z)


@given(energies, charges, impacts, st.floats(1.001, 1e3, **finite), st.sampled_from(list(Branch)))
def test_polar_and_temple_orbits_coincide(e, z, ks, f, br):
    sc = Scenario(e, z)
    rho1, _ = _turning_rho(sc.eta_s, ks)
    r = rho1 * f / sc.k
    th = classical.polar_orbit_theta(sc, ks, r, br)
    assert classical.temple_orbit_r(sc, ks, th) == pytest.approx(r, rel=1e-9)


def test_orbit_endpoints():
    sc = Scenario(20.0, 1)
    ks = 1.2
    far = 1e12 / sc.k
    assert classical.polar_orbit_theta(sc, ks, far, Branch.INCIDENT) == pytest.approx(math.pi, abs=1e-5)
    out = classical.polar_orbit_theta(sc, ks, far, Branch.SCATTERED)
    assert out == pytest.approx(classical.scattering_angle_classical(sc, ks), abs=1e-5)
    r1, _ = classical.turning_radii(sc, ks)
    assert classical.polar_orbit_theta(sc, ks, r1, Branch.INCIDENT) == pytest.approx(
        classical.periapsis_theta(sc, ks), abs=1e-7)
    with pytest.raises(DomainError):
        classical.polar_orbit_theta(sc, ks, 0.5 * r1, Branch.INCIDENT)
    with pytest.raises(DomainError):
        classical.temple_orbit_r(sc, ks, -math.pi + 1e-3)


def test_returning_point_attractive_and_repulsive():
    sc = Scenario(20.0, 1)
    r, th = classical.returning_point(sc, 1.2)
    assert th == 0.0 and r == pytest.approx(1.2 ** 2 / (2 * sc.eta_s) / sc.k)
    rep = Scenario(20.0, -1)
    r, th = classical.returning_point(rep, 1.2)
    assert r > 0 and 0 < th < math.pi
    assert classical.temple_orbit_r(rep, 1.2, th) == pytest.approx(r, rel=1e-12)


# ------------------------------------------------------------ cross sections
@given(st.floats(0.01, math.pi, **finite), st.sampled_from([-1, 1]), energies, charges)
def test_rutherford_dual_route(th, sgn, e, z):
    sc = Scenario(e, z)
    a = classical.rutherford_cross_section(sc, sgn * th)[0]
    b = classical.rutherford_from_impact(sc, sgn * th)
    assert a == pytest.approx(b, rel=1e-12)


def test_rutherford_units_and_domain():
    sc = Scenario(2000.0, 6)
    s1, s2 = classical.rutherford_cross_section(sc, -1.0)
    assert s2 == pytest.approx(s1 / sc.k ** 2)
    with pytest.raises(DomainError):
        classical.rutherford_cross_section(sc, 0.0)


# ------------------------------------------------------------ time
@given(energies, charges, impacts, st.floats(1.01, 100.0, **finite))
def test_polar_time_is_antisymmetric_and_increasing(e, z, ks, f):
    sc = Scenario(e, z)
    rho1, _ = _turning_rho(sc.eta_s, ks)
    rho = rho1 * f
    t_in = classical.classical_time(sc, ks, rho, 0.0, Branch.INCIDENT)
    t_out = classical.classical_time(sc, ks, rho, 0.0, Branch.SCATTERED)
    assert t_in == pytest.approx(-t_out, rel=1e-12)
    assert t_out > 0


@given(energies, charges, impacts, st.floats(1.01, 100.0, **finite))
def test_polar_time_derivative_is_inverse_radial_speed(e, z, ks, f):
    # d tau / d rho = 1 / sqrt(1 + 2 eta / rho - ks^2 / rho^2)
    sc = Scenario(e, z)
    rho1, _ = _turning_rho(sc.eta_s, ks)
    rho = rho1 * f
    eta = sc.eta_s
    num = central_difference(lambda r: classical.classical_time(sc, ks, r, 0.0, Branch.SCATTERED), rho,
                             1e-5 * rho)
    exact = 1.0 / math.sqrt(1 + 2 * eta / rho - ks * ks / (rho * rho))
    assert num == pytest.approx(exact, rel=1e-6)


@given(energies, charges, impacts, st.floats(1.05, 50.0, **finite), st.sampled_from(list(Branch)))
def test_temple_time_matches_polar_time(e, z, ks, f, br):
    sc = Scenario(e, z)
    rho1, _ = _turning_rho(sc.eta_s, ks)
    rho = rho1 * f
    th = classical.polar_orbit_theta(sc, ks, rho / sc.k, br)
    tp = classical.classical_time(sc, ks, rho, th, br)
    tt = classical.classical_time(sc, ks, rho, th, br, Coordinates.TEMPLE)
    assert tt == pytest.approx(tp, rel=1e-8, abs=1e-8 * rho)


def test_polar_orbit_sequence():
    sc = Scenario(20.0, 1)
    pts = classical.polar_orbit(sc, 1.2, np.linspace(0.1, 30.0, 50))
    taus = [p.tau for p in pts]
    assert all(b > a for a, b in zip(taus, taus[1:]))
    assert pts[0].branch is Branch.INCIDENT and pts[-1].branch is Branch.SCATTERED
    x, y = pts[0].xy_pm(sc.k)
    assert x < 0 < y


# ------------------------------------------------------------ numerics
def test_solve_bracketed_and_scan():
    f = math.cos
    br = scan_roots(f, np.linspace(0.0, 10.0, 40))
    roots = [solve_bracketed(f, b, tol=1e-14) for b in br]
    assert roots == pytest.approx([0.5 * math.pi, 1.5 * math.pi, 2.5 * math.pi], abs=1e-12)
    with pytest.raises(NoSignChange):
        solve_bracketed(f, Bracket.of(f, 2.0, 4.0))


@given(st.floats(-5, 5, **finite), st.floats(0.1, 3, **finite))
def test_solve_bracketed_stays_in_bracket(c, w):
    f = lambda x: (x - c) ** 3  # noqa: E731
    r = solve_bracketed(f, Bracket.of(f, c - w, c + 0.5 * w), tol=1e-13)
    assert c - w <= r <= c + 0.5 * w
    assert abs(r - c) <= 1e-4


@settings(max_examples=8)
@given(st.sampled_from([20.0, 200.0, 2000.0]), st.sampled_from([-1, 1, 6]), st.floats(0.8, 5.0, **finite))
def test_ode_deflection_matches_closed_form(e, z, ks):
    sc = Scenario(e, z)
    s = ks / sc.k
    run = deflection_run(e, z, s, r_launch=1e5 * s)
    assert math.degrees(abs(run["deflection"] - classical.scattering_angle_classical(sc, ks))) <= 1e-6
    assert run["energy_drift"] <= 1e-9 and run["l_drift"] <= 1e-9


def test_ode_orbit_points_lie_on_closed_form_orbit():
    sc = Scenario(20.0, 1)
    ks = 1.2
    s = ks / sc.k
    # the finite launch distance tilts the orbit by O(s / r_launch)
    run = deflection_run(20.0, 1, s, r_launch=1e5 * s)
    r1, _ = classical.turning_radii(sc, ks)
    for st_ in run["states"]:
        r = math.hypot(st_.x, st_.y)
        th = math.atan2(st_.y, st_.x)
        if 1.001 * r1 < r < 100 * s and abs(th) > 1e-3:
            assert classical.temple_orbit_r(sc, ks, th) == pytest.approx(r, rel=1e-7)


def test_ode_conserves_and_guards_singularity():
    v = speed_for_energy(20.0)
    start = OdeState(-1e4, 0.0, v, 0.0, 0.0)  # head-on, attractive
    with pytest.raises(SingularityApproach):
        integrate_newton(start, 20.0, 1, 3e4 / v)
    st0 = OdeState(-1e4, 50.0, v, 0.0, 0.0)
    states, _ = integrate_newton(st0, 20.0, 1, 1e4 / v)
    assert abs(energy_per_mass(states[-1], 1) / energy_per_mass(st0, 1) - 1) <= 1e-10
    assert angular_momentum_per_mass(states[-1]) == pytest.approx(angular_momentum_per_mass(st0), rel=1e-10)
