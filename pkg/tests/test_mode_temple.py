"""Temple (parabolic) mode waves, branch constants and trajectories."""
import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coulomb_traj import classical, mode_temple
from coulomb_traj.classical import Branch, Scenario
from coulomb_traj.errors import DomainError
from coulomb_traj.mode_temple import c1, c2, temple_wave_k

mp.mp.dps = 30
finite = dict(allow_nan=False, allow_infinity=False)
SC20 = Scenario(20.0, 1)
points = st.tuples(st.floats(0.5, 40.0, **finite), st.floats(0.2, 3.0, **finite), st.sampled_from([-1, 1]))


def mp_waves(kx, ky, eta):
    kr = mp.sqrt(mp.mpf(kx) ** 2 + mp.mpf(ky) ** 2)
    kz = kr - kx
    pre = mp.exp(-mp.pi * eta / 2)
    psi_in = pre * mp.exp(1j * kx) * mp.hyperu(1j * eta, 1, 1j * kz)
    g = mp.gamma(1 - 1j * eta) / mp.gamma(1j * eta)
    psi_sc = -pre * g * mp.exp(1j * kr) * mp.hyperu(1 - 1j * eta, 1, -1j * kz)
    return complex(psi_in), complex(psi_sc)


def polar_point(p):
    kr, th, sgn = p
    return kr * math.cos(sgn * th), kr * math.sin(sgn * th)


@pytest.mark.parametrize("kx,ky", [(-5.0, 1.2), (3.0, 2.0), (0.5, 0.7), (-30.0, 4.0), (20.0, -6.0)])
def test_waves_match_mpmath(kx, ky):
    w = temple_wave_k(kx, ky, SC20)
    ri, rs = mp_waves(kx, ky, SC20.eta_s)
    assert abs(w.psi_in - ri) <= 1e-12 * abs(ri)
    assert abs(w.psi_sc - rs) <= 1e-12 * abs(rs)


@settings(max_examples=20)
@given(points)
def test_rotation_derivative(p):
    kx, ky = polar_point(p)
    h = 1e-5

    def rot(phi):
        c, s = math.cos(phi), math.sin(phi)
        return temple_wave_k(c * kx - s * ky, s * kx + c * ky, SC20)
    a, b = rot(h), rot(-h)
    w = temple_wave_k(kx, ky, SC20)
    assert abs((a.psi_in - b.psi_in) / (2 * h) - w.dphi_in) <= 1e-6 * (abs(w.dphi_in) + abs(w.psi_in))
    assert abs((a.psi_sc - b.psi_sc) / (2 * h) - w.dphi_sc) <= 1e-6 * (abs(w.dphi_sc) + abs(w.psi_sc))


@settings(max_examples=20)
@given(points)
def test_branch_constants_are_phase_rotations(p):
    kx, ky = polar_point(p)
    w = temple_wave_k(kx, ky, SC20)
    assert c1(kx, ky, SC20) == pytest.approx((w.dphi_in / w.psi_in).imag, rel=1e-10, abs=1e-12)
    assert c2(kx, ky, SC20) == pytest.approx((w.dphi_sc / w.psi_sc).imag, rel=1e-10, abs=1e-12)


def test_branch_constants_far_field():
    eta = SC20.eta_s
    # far upstream U_z / U -> 0, so C1 -> -ky
    assert c1(-1e4, 3.0, SC20) == pytest.approx(-3.0, rel=1e-3)
    # far along a ray C2 -> eta cot(theta / 2), with the sign of the angle
    for th in (-1.2, -0.6, 2.0):
        kr = 1e5
        val = c2(kr * math.cos(th), kr * math.sin(th), SC20)
        assert val == pytest.approx(eta / math.tan(th / 2), rel=1e-3)


def test_energy_derivative_of_waves():
    x_pm, y_pm = 150.0, -80.0
    w = mode_temple.temple_wave(x_pm, y_pm, SC20)
    h = 1e-3

    def at(e):
        return mode_temple.temple_wave(x_pm, y_pm, Scenario(e, 1))
    a, b = at(20.0 + h), at(20.0 - h)
    # k d/dk = 2E d/dE
    assert abs(40.0 * (a.psi_in - b.psi_in) / (2 * h) - w.dk_in) <= 1e-6 * abs(w.dk_in)
    assert abs(40.0 * (a.psi_sc - b.psi_sc) / (2 * h) - w.dk_sc) <= 1e-6 * abs(w.dk_sc)


def test_forward_line_is_excluded():
    with pytest.raises(DomainError):
        temple_wave_k(5.0, 0.0, SC20)
    with pytest.raises(DomainError):
        temple_wave_k(0.0, 0.0, SC20)


@pytest.mark.parametrize("ks", [1.2, 1.79])
def test_incident_branch_solves_c1(ks):
    grid = np.concatenate([-np.geomspace(50.0, 0.5, 12), np.linspace(0.0, 3.0, 13)])
    pts, gaps = mode_temple.temple_trajectory(SC20, ks, Branch.INCIDENT, grid)
    assert pts and all(p.branch is Branch.INCIDENT for p in pts)
    for p in pts:
        kx, ky = p.rho * math.cos(p.theta), p.rho * math.sin(p.theta)
        assert ky > 0
        assert c1(kx, ky, SC20) == pytest.approx(-ks, abs=1e-8)
    # far upstream the branch approaches the impact line ky = ks
    far = min(pts, key=lambda p: p.rho * math.cos(p.theta))
    assert far.rho * math.sin(far.theta) == pytest.approx(ks, rel=0.02)
    # gaps only near the origin
    assert gaps.max_kr() <= 5.0
    assert not gaps.empty and gaps.extent(Branch.SCATTERED) is None


@pytest.mark.parametrize("ks", [1.2, 1.79])
def test_scattered_branch_solves_c2(ks):
    grid = np.geomspace(2.0, 200.0, 15)
    pts, gaps = mode_temple.temple_trajectory(SC20, ks, Branch.SCATTERED, grid)
    assert gaps.empty and len(pts) == len(grid)
    for p in pts:
        kx, ky = p.rho * math.cos(p.theta), p.rho * math.sin(p.theta)
        assert ky < 0
        assert c2(kx, ky, SC20) == pytest.approx(-ks, abs=1e-8)
    # time increases outwards along the scattered branch
    taus = [p.tau for p in pts]
    assert all(b > a for a, b in zip(taus, taus[1:]))


@pytest.mark.parametrize("ks", [1.2, 1.79, 3.0])
def test_scattering_angle_is_rutherford(ks):
    th = mode_temple.scattering_angle_temple(SC20, ks)
    assert math.degrees(th) == pytest.approx(math.degrees(classical.scattering_angle_classical(SC20, ks)),
                                              abs=1e-3)


def test_temple_time_and_tau_far_field():
    # far out on the scattered branch tau grows like kr - eta log(2 kr)
    ks = 1.2
    pts, _ = mode_temple.temple_trajectory(SC20, ks, Branch.SCATTERED, [400.0, 800.0])
    d_tau = pts[1].tau - pts[0].tau
    eta = SC20.eta_s
    expected = 400.0 - eta * math.log(2.0)
    assert d_tau == pytest.approx(expected, rel=2e-3)
    t = mode_temple.temple_time(SC20, ks, Branch.SCATTERED, pts[0])
    assert t == pytest.approx(pts[0].tau * SC20.time_unit_s)


@given(st.floats(0.05, math.pi, **finite))
def test_cross_section_is_rutherford(th):
    assert mode_temple.temple_cross_section(SC20, -th) == classical.rutherford_cross_section(SC20, -th)


def test_invalid_ks():
    with pytest.raises(DomainError):
        mode_temple.temple_trajectory(SC20, 0.0, Branch.INCIDENT, [1.0])
