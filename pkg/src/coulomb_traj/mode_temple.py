"""Mode trajectories from the Temple-form (parabolic) Coulomb wave functions.

The incident and scattered waves are built from U(a, 1, z) with a = i eta_s
and 1 - i eta_s, z = +-i k zeta, zeta = r - x. The trajectory constants come
from the rotation derivative at zero angle; times from k d/dk at fixed
position. The separate waves are singular on the forward line zeta = 0, so
the m-trajectories are not expected near the origin: the solver reports
grid points without a root as gaps instead of filling them.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .classical import (Branch, Scenario, TrajectoryPoint, rutherford_cross_section,
                        scattering_angle_classical, temple_orbit_r)
from .errors import DomainError, NoSignChange
from .numerics import Bracket, solve_bracketed
from .specfun.gamma import loggamma, polygamma
from .specfun.kummer import u_parts

KZETA_FLOOR = 1e-8
THETA_EPS = 1e-4
# the scattered-branch window opens this far below the classical asymptote
SCATTER_MARGIN = 0.1


@dataclass(frozen=True)
class TempleWave:
    """Incident and scattered Temple waves at one point, with d/dphi and k d/dk."""

    psi_in: complex
    psi_sc: complex
    dphi_in: complex
    dphi_sc: complex
    dk_in: complex
    dk_sc: complex


def _kzeta(kx: float, ky: float) -> float:
    kr = math.hypot(kx, ky)
    if kx < 0.0:
        return kr - kx
    # r - x loses digits for x > 0 near the forward axis
    return ky * ky / (kr + kx) if kr > 0.0 else 0.0


def _parts(kx: float, ky: float, eta: float, which: Branch):
    kz = _kzeta(kx, ky)
    if kz < KZETA_FLOOR:
        raise DomainError(f"k zeta = {kz:.3g} below the forward-line floor")
    if which is Branch.INCIDENT:
        a, z = 1j * eta, 1j * kz
    else:
        a, z = 1.0 - 1j * eta, -1j * kz
    U, Ua, Uz, err, _ = u_parts(a, 1.0, z)
    return U, Ua, Uz, z


def temple_wave_k(kx: float, ky: float, sc: Scenario) -> TempleWave:
    """Temple waves at dimensionless position (kx, ky)."""
    eta = sc.eta_s
    kr = math.hypot(kx, ky)
    if kr == 0.0:
        raise DomainError("r = 0")
    pre = math.exp(-0.5 * math.pi * eta)
    U, Ua, Uz, z = _parts(kx, ky, eta, Branch.INCIDENT)
    psi_in = pre * cmath.exp(1j * kx) * U
    # k d/dk: a = i eta -> -i eta, z -> z, i k x -> i k x
    dlog_in = 0.5 * math.pi * eta + 1j * kx + (-1j * eta * Ua + z * Uz) / U
    dphi_in = psi_in * (-1j * ky + 1j * ky * Uz / U)

    V, Va, Vw, w = _parts(kx, ky, eta, Branch.SCATTERED)
    g = cmath.exp(loggamma(1.0 - 1j * eta) - loggamma(1j * eta))
    psi_sc = -pre * g * cmath.exp(1j * kr) * V
    dlog_sc = (0.5 * math.pi * eta + 1j * eta * (polygamma(0, 1.0 - 1j * eta) + polygamma(0, 1j * eta))
               + 1j * kr + (1j * eta * Va + w * Vw) / V)
    dphi_sc = psi_sc * (-1j * ky) * Vw / V
    return TempleWave(psi_in, psi_sc, dphi_in, dphi_sc, psi_in * dlog_in, psi_sc * dlog_sc)


def temple_wave(x: float, y: float, sc: Scenario) -> TempleWave:
    """Temple waves at (x, y) in pm; ``dk_*`` hold k d psi / dk."""
    k = sc.k
    return temple_wave_k(k * x, k * y, sc)


def c1(kx: float, ky: float, sc: Scenario) -> float:
    """Incident-branch constant Im(d_phi psi_in / psi_in); tends to -ky far away."""
    U, _, Uz, _ = _parts(kx, ky, sc.eta_s, Branch.INCIDENT)
    return -ky + ky * (Uz / U).real


def c2(kx: float, ky: float, sc: Scenario) -> float:
    """Scattered-branch constant Im(d_phi psi_sc / psi_sc); tends to eta cot(theta/2)."""
    V, _, Vw, _ = _parts(kx, ky, sc.eta_s, Branch.SCATTERED)
    return -ky * (Vw / V).real


def temple_tau(kx: float, ky: float, sc: Scenario, branch: Branch) -> float:
    """Dimensionless time 2E(t + t0)/hbar = Im(k d_k psi / psi) on a branch."""
    wv = temple_wave_k(kx, ky, sc)
    if branch is Branch.INCIDENT:
        return (wv.dk_in / wv.psi_in).imag
    return (wv.dk_sc / wv.psi_sc).imag


def temple_time(sc: Scenario, ks: float, branch: Branch, point: TrajectoryPoint) -> float:
    """Time (s) at a solved trajectory point, 2E(t + t0)/hbar scaled by hbar/2E.

    ``ks`` is accepted for symmetry with the classical interface; the time
    depends on the point only.
    """
    kx, ky = point.rho * math.cos(point.theta), point.rho * math.sin(point.theta)
    return temple_tau(kx, ky, sc, branch) * sc.time_unit_s


@dataclass
class GapReport:
    """Grid points (kx for the incident branch, kr for the scattered) without a root."""

    incident: list[float] = field(default_factory=list)
    scattered: list[float] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not (self.incident or self.scattered)

    def extent(self, branch: Branch) -> tuple[float, float] | None:
        pts = self.incident if branch is Branch.INCIDENT else self.scattered
        return (min(pts), max(pts)) if pts else None

    def max_kr(self) -> float:
        """Largest distance from the origin among gap points (0 if none)."""
        rs = [abs(v) for v in self.incident] + list(self.scattered)
        return max(rs) if rs else 0.0


def _roots(f, grid: np.ndarray) -> list[float]:
    vals = []
    for g in grid:
        try:
            vals.append(f(float(g)))
        except DomainError:
            vals.append(math.nan)
    out = []
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if math.isnan(a) or math.isnan(b) or (a > 0.0) == (b > 0.0):
            continue
        try:
            out.append(solve_bracketed(f, Bracket(float(grid[i]), float(grid[i + 1]), a, b), tol=1e-12))
        except NoSignChange:
            continue
    return out


def _incident_point(sc: Scenario, ks: float, kx: float, ref_ky: float | None):
    def f(ky):
        return c1(kx, ky, sc) + ks

    top = 4.0 * ks + 2.0 * sc.eta_s
    grid = np.concatenate([np.geomspace(1e-4, 0.05 * top, 24), np.linspace(0.05 * top, top, 80)[1:]])
    roots = _roots(f, grid)
    if not roots:
        return None
    ref = ks if ref_ky is None else ref_ky
    return min(roots, key=lambda y: abs(y - ref))


def _scattered_point(sc: Scenario, ks: float, kr: float, ref_theta: float | None):
    th_sc = scattering_angle_classical(sc, ks)

    def f(th):
        return c2(kr * math.cos(th), kr * math.sin(th), sc) + ks

    lo = th_sc - SCATTER_MARGIN if sc.z > 0 else THETA_EPS
    hi = -THETA_EPS if sc.z > 0 else math.pi - THETA_EPS
    roots = _roots(f, np.linspace(lo, hi, 120))
    if not roots:
        return None
    ref = th_sc if ref_theta is None else ref_theta
    return min(roots, key=lambda t: abs(t - ref))


def _classical_ky_at_x(sc: Scenario, ks: float, kx: float) -> float | None:
    """Height of the classical incident orbit (theta in (0, pi)) at kx, if reached."""
    def g(th):
        return temple_orbit_r(sc, ks, th) * sc.k * math.cos(th) - kx

    try:
        th = solve_bracketed(g, Bracket.of(g, 1e-9, math.pi - 1e-9), tol=1e-13)
    except NoSignChange:
        return None
    return temple_orbit_r(sc, ks, th) * sc.k * math.sin(th)


def _classical_theta_at_r(sc: Scenario, ks: float, kr: float) -> float | None:
    """Angle of the classical scattered orbit (theta < 0) at kr, if reached."""
    th_sc = scattering_angle_classical(sc, ks)

    def g(th):
        return temple_orbit_r(sc, ks, th) * sc.k - kr

    try:
        return solve_bracketed(g, Bracket.of(g, th_sc + 1e-12, -1e-12), tol=1e-13)
    except NoSignChange:
        return None


def temple_trajectory(sc: Scenario, ks: float, branch: Branch,
                      grid: Iterable[float]) -> tuple[list[TrajectoryPoint], GapReport]:
    """Temple m-trajectory on one branch.

    Parameters
    ----------
    sc : Scenario
        Attractive centre (``z > 0``) in the figure presets.
    ks : float
        Dimensionless impact parameter; the branch constant is ``-ks``.
    branch : Branch
        ``INCIDENT``: ``grid`` holds kx values and C1(kx, ky) = -ks is solved
        for ky > 0. ``SCATTERED``: ``grid`` holds kr values and C2 = -ks is
        solved for the angle.
    grid : iterable of float

    Returns
    -------
    points, gaps
        Points carry rho = kr, signed theta and tau; grid values without a
        root (in the search window) are listed in the gap report.
    """
    if ks <= 0.0:
        raise DomainError("ks must be positive")
    gaps = GapReport()
    pts: list[TrajectoryPoint] = []
    prev = None
    for g in grid:
        g = float(g)
        if branch is Branch.INCIDENT:
            ky = _incident_point(sc, ks, g, prev)
            if ky is None:
                gaps.incident.append(g)
                continue
            prev = ky
            kx = g
        else:
            th = _scattered_point(sc, ks, g, prev)
            if th is None:
                gaps.scattered.append(g)
                continue
            prev = th
            kx, ky = g * math.cos(th), g * math.sin(th)
        tau = temple_tau(kx, ky, sc, branch)
        pts.append(TrajectoryPoint(math.hypot(kx, ky), math.atan2(ky, kx), tau, branch))
    return pts, gaps


def scattering_angle_temple(sc: Scenario, ks: float, kr: float = 1e4) -> float:
    """Scattering angle from the direction of the scattered m-trajectory at ``kr``.

    The direction (not the polar angle of the point) is used: the branch
    approaches a line that does not pass through the origin.
    """
    h = max(0.5, 5e-3 * kr)
    a = _scattered_point(sc, ks, kr - h, None)
    b = _scattered_point(sc, ks, kr + h, None)
    if a is None or b is None:
        raise NoSignChange(f"no scattered-branch root near kr = {kr}")
    dy = (kr + h) * math.sin(b) - (kr - h) * math.sin(a)
    dx = (kr + h) * math.cos(b) - (kr - h) * math.cos(a)
    return math.atan2(dy, dx)


def temple_cross_section(sc: Scenario, theta_sc: float) -> tuple[float, float]:
    """Cross section of the Temple m-trajectories: the Rutherford form (sigma k^2, pm^2)."""
    return rutherford_cross_section(sc, theta_sc)
