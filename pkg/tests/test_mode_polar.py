"""Polar mode functions: angular and radial characteristic functions, angles, trajectories."""
import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coulomb_traj import classical, mode_polar
from coulomb_traj.classical import Branch, Scenario
from coulomb_traj.errors import DomainError, NoSignChange
from coulomb_traj.mode_polar import ModeParams, _y_jet
from coulomb_traj.specfun import polygamma
from coulomb_traj.specfun.types import Regime

mp.mp.dps = 40
finite = dict(allow_nan=False, allow_infinity=False)
SC20 = Scenario(20.0, 1)
SC2000 = Scenario(2000.0, 6)
nus = st.floats(0.0, 4.0, **finite)
thetas = st.floats(0.05, math.pi - 0.05, **finite)


def mp_y(theta, nu):
    x = mp.cos(theta)
    nu = max(nu, mp.mpf("1e-15"))
    return mp.legenq(nu, 0, x, type=2) + 0.5j * mp.pi * mp.legenp(nu, 0, x, type=2)


def mp_dnu_w(theta, nu):
    return float(mp.im(mp.diff(lambda n: mp.log(mp_y(theta, n)), nu)))


# ------------------------------------------------------------ parameters
def test_mode_params_validation():
    assert ModeParams(0.629).mu == 0
    with pytest.raises(DomainError):
        ModeParams(-0.5)
    with pytest.raises(DomainError):
        ModeParams(1.0, mu=1)


# ------------------------------------------------------------ W_theta
@pytest.mark.parametrize("theta,nu", [(0.4, 0.5), (1.3, 0.629), (2.2, 1.2), (2.9, 2.7), (3.1, 0.1)])
def test_dnu_w_theta_matches_mpmath(theta, nu):
    assert mode_polar.dnu_w_theta(theta, nu) == pytest.approx(mp_dnu_w(theta, nu), abs=1e-10)


@settings(max_examples=20)
@given(thetas, nus)
def test_dnu_w_theta_is_increasing_and_in_range(theta, nu):
    a = mode_polar.dnu_w_theta(theta, nu)
    b = mode_polar.dnu_w_theta(theta + 0.02, nu)
    assert 0.0 < a < b < math.pi


def test_w_theta_endpoints():
    for nu in (0.0, 0.5, 0.629, 1.2, 3.3):
        assert mode_polar.w_theta(0.0, nu) == 0.0
        assert mode_polar.w_theta(math.pi, nu) == pytest.approx(math.pi * nu, abs=1e-12)
        # d_nu W_theta -> 0 at theta -> 0, only logarithmically
        assert 0.0 < mode_polar.dnu_w_theta(1e-9, nu) < mode_polar.dnu_w_theta(1e-3, nu) < 0.1


def test_w_theta_value_is_continuous_and_differentiates():
    nu = 0.629
    th = np.linspace(0.01, math.pi - 0.01, 200)
    w = np.array([mode_polar.w_theta(t, nu) for t in th])
    assert np.max(np.abs(np.diff(w))) < 0.2
    # the nu-derivative orders against differences of the continuous value
    for t in (0.5, 1.5, 2.5):
        h = 1e-3
        w = [mode_polar.w_theta(t, nu + k * h) for k in (-1, 0, 1)]
        assert (w[2] - w[0]) / (2 * h) == pytest.approx(mode_polar.w_theta(t, nu, 1), rel=1e-6)
        assert (w[2] - 2 * w[1] + w[0]) / h ** 2 == pytest.approx(mode_polar.w_theta(t, nu, 2), abs=1e-6)


def test_dnu_w_theta_near_pi_consistent_with_direct():
    for nu in (0.3, 1.2):
        for d in (1e-2, 1e-4):
            assert mode_polar.dnu_w_theta_near_pi(d, nu) == pytest.approx(
                mode_polar.dnu_w_theta(math.pi - d, nu), abs=1e-11)


@given(thetas, nus)
def test_signed_extension_is_odd(theta, nu):
    assert mode_polar.dnu_w_theta_signed(-theta, nu) == -mode_polar.dnu_w_theta_signed(theta, nu)


def test_y_jet_regime_reported():
    assert isinstance(_y_jet(1.0, 0.5).regime, Regime)


# ------------------------------------------------------------ radial wave
def mp_u(rho, eta, nu):
    ab = mp.mpc(nu + 1, -eta)
    b = 2 * nu + 2
    return complex(-mp.exp(-1j * mp.pi * b) * mp.gamma(ab) * mp.exp(1j * rho) * mp.mpf(rho) ** (nu + 1)
                   * mp.hyperu(ab, b, -2j * mp.mpf(rho)))


@pytest.mark.parametrize("rho,nu", [(0.3, 0.629), (4.0, 1.2), (11.0, 0.0), (17.0, 0.5), (40.0, 0.629),
                                     (2.5, 1.002), (9.0, -0.25)])
def test_radial_wave_matches_mpmath(rho, nu):
    rw = mode_polar.radial_wave(rho, SC20, nu)
    ref = mp_u(rho, SC20.eta_s, nu)
    assert abs(rw.u - ref) <= 1e-9 * abs(ref)


def test_radial_wave_regimes_and_domain():
    assert mode_polar.radial_wave(2.0, SC20, 0.629).regime is Regime.SERIES
    assert mode_polar.radial_wave(80.0, SC20, 0.629).regime is Regime.ASYMPTOTIC
    with pytest.raises(DomainError):
        mode_polar.radial_wave(0.0, SC20, 0.5)
    with pytest.raises(DomainError):
        mode_polar.radial_wave(1.0, SC20, -0.6)


@settings(max_examples=15)
@given(st.floats(12.5, 17.5, **finite), st.floats(0.0, 2.5, **finite))
def test_radial_wave_series_and_asymptotic_agree(rho, nu):
    # dual route: two-M series against the U asymptotic form where both apply
    if abs(2 * nu + 2 - round(2 * nu + 2)) < 0.01:
        nu += 0.02
    eta = SC20.eta_s
    s, _ = mode_polar._u_tilde_series(rho, eta, nu)
    a, _ = mode_polar._u_tilde_asymptotic(rho, eta, nu)
    assert abs(s.v - a.v) <= 1e-8 * abs(a.v)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 1.5])
def test_integer_b_interpolation_is_smooth(nu):
    # inside the interpolation window and just outside it, against mpmath
    rho = 3.0
    for dn in (0.0, 1e-3, 3.9e-3, 4.1e-3):
        ref = mp_u(rho, SC20.eta_s, nu + dn if nu + dn else 1e-12)
        assert abs(mode_polar.radial_wave(rho, SC20, nu + dn).u - ref) <= 1e-10 * abs(ref)


def test_w_r_origin_and_far_field():
    nu, eta = 0.629, SC20.eta_s
    assert mode_polar.w_r(0.0, SC20, nu) == -0.5 * math.pi
    assert mode_polar.w_r(1e-6, SC20, nu) == pytest.approx(-0.5 * math.pi, abs=1e-5)
    a = complex(nu + 1, eta)
    for rho in (60.0, 120.0):
        far = (rho + eta * math.log(2 * rho) - mp.im(mp.loggamma(a)) - 0.5 * math.pi * (1 + nu)
               + (nu * (1 + nu) + eta ** 2) / (2 * rho))
        assert mode_polar.w_r(rho, SC20, nu) == pytest.approx(float(far), abs=2e-4)


def test_tau_far_field_with_complete_inverse_rho_term():
    # Tau = 2E dW_r/dE from the far form of W_r, keeping the full 1/rho term
    nu, eta = 0.629, SC20.eta_s
    a = complex(nu + 1, eta)

    def far(rho):
        return (rho - eta * math.log(2 * rho) + eta + eta * polygamma(0, a).real
                - (3 * eta ** 2 + nu * (nu + 1)) / (2 * rho))
    r50 = abs(mode_polar.w_r(50.0, SC20, nu, "Tau") - far(50.0))
    r100 = abs(mode_polar.w_r(100.0, SC20, nu, "Tau") - far(100.0))
    assert 3.0 <= r50 / r100 <= 5.0
    assert r100 < 1e-4


def test_w_r_dnu_and_tau_are_derivatives_of_w_r():
    nu, rho = 0.629, 7.0
    h = 1e-4
    fd_nu = (mode_polar.w_r(rho, SC20, nu + h) - mode_polar.w_r(rho, SC20, nu - h)) / (2 * h)
    assert mode_polar.w_r(rho, SC20, nu, "DNu") == pytest.approx(fd_nu, rel=1e-6)
    # 2E d/dE at fixed r
    r_pm, e = rho / SC20.k, 20.0
    de = 1e-3

    def w_at(en):
        sc = Scenario(en, 1)
        return mode_polar.w_r(r_pm * sc.k, sc, nu)
    fd_e = 2 * e * (w_at(e + de) - w_at(e - de)) / (2 * de)
    assert mode_polar.w_r(rho, SC20, nu, "Tau") == pytest.approx(fd_e, rel=1e-6)
    with pytest.raises(ValueError):
        mode_polar.w_r(rho, SC20, nu, "Other")


# ------------------------------------------------------------ angles (frozen mpmath roots)
@pytest.mark.parametrize("sc,nu,deg", [
    (SC20, 0.629, -69.0004720235584),
    (SC20, 1.2, -49.4616908801839),
    (SC20, 0.0, -115.557800418499),
    (SC2000, 0.0, -79.8463929862851),
])
def test_scattering_angle_frozen(sc, nu, deg):
    assert mode_polar.scattering_angle_mode(sc, nu).degrees == pytest.approx(deg, abs=1e-8)


def test_limiting_and_returning_frozen():
    assert math.degrees(mode_polar.limiting_angle(SC2000).signed) == pytest.approx(-79.8463929862851, abs=1e-8)
    assert math.degrees(mode_polar.returning_theta(SC20, 0.629)) == pytest.approx(52.9343690028303, abs=1e-8)
    assert math.degrees(mode_polar.returning_theta(SC20, 1.2)) == pytest.approx(63.8033340136459, abs=1e-8)


def test_repulsive_angle_is_positive():
    rep = Scenario(20.0, -1)
    ang = mode_polar.scattering_angle_mode(rep, 0.629)
    assert ang.signed > 0 and ang.raw == pytest.approx(
        abs(mode_polar.scattering_angle_mode(SC20, 0.629).signed), abs=1e-12)


@settings(max_examples=15)
@given(st.floats(0.0, 8.0, **finite))
def test_angle_decreases_with_nu(nu):
    a = mode_polar.scattering_angle_mode(SC20, nu).raw
    b = mode_polar.scattering_angle_mode(SC20, nu + 0.1).raw
    assert b < a < mode_polar.limiting_angle(SC20).raw + 1e-12


def test_angle_approaches_classical_at_large_nu():
    # relative to the classical angle at ks = nu + 1/2 the gap narrows with nu
    gaps = []
    for nu in (2.0, 8.0, 30.0):
        m = mode_polar.scattering_angle_mode(SC20, nu).raw
        c = abs(classical.scattering_angle_classical(SC20, nu + 0.5))
        gaps.append(abs(m - c))
    assert gaps[0] > gaps[1] > gaps[2]


def test_dnu_dtheta_matches_finite_difference_of_angle():
    for nu in (0.3, 1.2, 4.0):
        _, dndt = mode_polar.dnu_dtheta_mode(SC2000, nu)
        h = 1e-5
        fd = (mode_polar.scattering_angle_mode(SC2000, nu + h).raw
              - mode_polar.scattering_angle_mode(SC2000, nu - h).raw) / (2 * h)
        assert 1.0 / dndt == pytest.approx(fd, rel=1e-7)


def test_cross_section_sample():
    cs = mode_polar.cross_section_mode(SC2000, 2.0)
    assert cs.sigma_inv_k2 > 0 and cs.theta_sc < 0
    assert cs.sigma_pm2 == pytest.approx(cs.sigma_inv_k2 / SC2000.k ** 2)


# ------------------------------------------------------------ trajectory
def test_trajectory_polar_structure():
    nu = 0.629
    grid = np.concatenate([np.geomspace(1e-3, 1.0, 10), np.linspace(1.5, 30.0, 20)])
    pts = mode_polar.trajectory_polar(SC20, nu, grid)
    inc = [p for p in pts if p.branch is Branch.INCIDENT]
    sct = [p for p in pts if p.branch is Branch.SCATTERED]
    assert len(inc) == len(grid) + 1 and len(sct) == len(grid)
    origin = inc[-1]
    assert origin.rho == 0.0 and origin.tau == 0.0
    assert origin.theta == pytest.approx(mode_polar.returning_theta(SC20, nu))
    # time runs forward along the whole trajectory
    taus = [p.tau for p in pts]
    assert all(b > a for a, b in zip(taus, taus[1:]))
    # far out, the branches head towards theta = pi and the scattering angle
    assert inc[0].theta > 2.5
    assert sct[-1].theta == pytest.approx(mode_polar.scattering_angle_mode(SC20, nu).signed, abs=0.15)
    # continuity: neighbouring points on each branch stay close in the plane
    for br in (inc, sct):
        for p, q in zip(br, br[1:]):
            dx = p.rho * math.cos(p.theta) - q.rho * math.cos(q.theta)
            dy = p.rho * math.sin(p.theta) - q.rho * math.sin(q.theta)
            assert math.hypot(dx, dy) <= 2.0 * abs(p.rho - q.rho) + 0.5


def test_incident_branch_impact_relation_with_log_correction():
    # far out rho (pi - theta) grows like the log-corrected form, not like nu + 1/2
    nu = 0.629
    ip = mode_polar._im_psi(SC20, nu)
    vals = []
    for rho in (1e2, 1e3, 1e4):
        # pi - theta itself; theta rounds to pi in double precision
        _, d = mode_polar._solve_abs(0.5 * math.pi - ip - mode_polar.dnu_w_r(rho, SC20, nu), nu)
        vals.append(rho * math.pi * polygamma(1, nu + 1.0).real / (2 * math.log(d / 2) ** 2))
    assert vals == pytest.approx([1.007, 1.084, 1.114], abs=2e-3)


def test_trajectory_failure_handling():
    # an incident target beyond the reach of d_nu W_theta
    with pytest.raises(NoSignChange):
        mode_polar._solve_signed(3.5, 0.5)
    pts = mode_polar.trajectory_polar(SC20, 0.629, [5.0], skip_failures=True)
    assert len(pts) == 3


# ------------------------------------------------------------ dt/drho
def test_dt_drho_frozen():
    grid = np.geomspace(1e-5, 30.0, 400)
    assert mode_polar.dt_drho_scan(SC20, -0.25, grid) == pytest.approx(0.0465902211, abs=1e-9)
    assert mode_polar.dt_drho_scan(SC20, 0.5, grid) is None


def test_dtau_drho_matches_difference():
    for nu, rho in ((0.629, 3.0), (-0.25, 0.05), (1.2, 20.0)):
        h = 1e-5 * max(rho, 1.0)
        fd = (mode_polar.w_r(rho + h, SC20, nu, "Tau") - mode_polar.w_r(rho - h, SC20, nu, "Tau")) / (2 * h)
        assert mode_polar.dtau_drho(rho, SC20, nu) == pytest.approx(fd, rel=1e-6, abs=1e-8)
