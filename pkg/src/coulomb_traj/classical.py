"""Closed-form classical Coulomb scattering in polar and Temple coordinates.

All lengths are handled in the dimensionless form ``rho = k r`` internally;
public functions taking or returning radii use picometres.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .constants import sommerfeld, time_unit, wavenumber
from .errors import DomainError


class Branch(str, enum.Enum):
    INCIDENT = "Incident"
    SCATTERED = "Scattered"


class Coordinates(str, enum.Enum):
    POLAR = "Polar"
    TEMPLE = "Temple"


@dataclass(frozen=True)
class Scenario:
    """Beam energy and nuclear charge with the derived k (1/pm) and eta_s."""

    energy_ev: float
    z: int

    def __post_init__(self):
        if not self.energy_ev > 0.0:
            raise DomainError("energy must be positive")
        if self.z == 0:
            raise DomainError("Z must be non-zero")

    @property
    def k(self) -> float:
        return wavenumber(self.energy_ev)

    @property
    def eta_s(self) -> float:
        return sommerfeld(self.energy_ev, self.z)

    @property
    def time_unit_s(self) -> float:
        """hbar / 2E: seconds per unit of the dimensionless time tau."""
        return time_unit(self.energy_ev)


@dataclass(frozen=True)
class ClassicalOrbitParams:
    """Impact parameter in dimensionless (ks = l) and physical (s, pm) form."""

    ks: float
    s: float

    @property
    def L(self) -> float:
        """Angular momentum in units of hbar."""
        return self.ks

    @classmethod
    def from_ks(cls, sc: Scenario, ks: float) -> "ClassicalOrbitParams":
        if not ks > 0.0:
            raise DomainError("ks must be positive")
        return cls(ks, ks / sc.k)


@dataclass(frozen=True)
class TrajectoryPoint:
    """Point of a trajectory in the scattering plane.

    ``rho = k r``, ``theta`` the polar angle (rad), ``tau = 2E (t + t0) / hbar``.
    """

    rho: float
    theta: float
    tau: float
    branch: Branch

    def xy_pm(self, k: float) -> tuple[float, float]:
        r = self.rho / k
        return r * math.cos(self.theta), r * math.sin(self.theta)


def _turning_rho(eta: float, ks: float) -> tuple[float, float]:
    root = math.hypot(eta, ks)
    # rho1 = -eta + root written without cancellation for eta > 0
    rho1 = ks * ks / (eta + root) if eta > 0 else root - eta
    rho2 = -eta - root if eta > 0 else -ks * ks / (root - eta) if ks else 0.0
    return rho1, rho2


def turning_radii(sc: Scenario, L: float) -> tuple[float, float]:
    """Roots r1 > 0 > r2 (pm) of 2mE + 2mZe^2/r - L^2/r^2 for L in units of hbar."""
    r1, r2 = _turning_rho(sc.eta_s, L)
    return r1 / sc.k, r2 / sc.k


def _polar_theta_rho(eta: float, ks: float, rho: float, branch: Branch) -> float:
    rho1, rho2 = _turning_rho(eta, ks)
    if rho < rho1 * (1.0 - 1e-14):
        raise DomainError(f"rho={rho} inside the turning point {rho1}")
    ratio = max(rho / rho1 - 1.0, 0.0) / (rho / (-rho2) + 1.0)
    base = 2.0 * math.atan(math.sqrt(-rho2 / rho1))
    arm = 2.0 * math.atan(math.sqrt(ratio))
    if branch is Branch.INCIDENT:
        return arm - base + math.pi
    return -arm - base + math.pi


def polar_orbit_theta(sc: Scenario, L: float, r: float, branch: Branch) -> float:
    """Polar angle of the classical orbit at radius ``r`` (pm) on ``branch``.

    The incident branch starts at theta = pi for r -> infinity; both branches
    meet at the closest approach r1.
    """
    return _polar_theta_rho(sc.eta_s, L, r * sc.k, Branch(branch))


def scattering_angle_classical(sc: Scenario, ks: float) -> float:
    """Signed scattering angle -2 atan(eta_s / ks) in radians."""
    return -2.0 * math.atan(sc.eta_s / ks)


def scattering_angle_from_radii(sc: Scenario, ks: float) -> float:
    """Same angle from the turning radii: pi - 4 atan sqrt(-r2 / r1)."""
    rho1, rho2 = _turning_rho(sc.eta_s, ks)
    return math.pi - 4.0 * math.atan(math.sqrt(-rho2 / rho1))


def _temple_den(eta: float, ks: float, theta: float) -> float:
    return (eta / ks) * (1.0 + math.cos(theta)) + math.sin(theta)


def temple_orbit_r(sc: Scenario, ks: float, theta: float) -> float:
    """Orbit radius (pm) at polar angle ``theta`` from the Temple-coordinate orbit."""
    den = _temple_den(sc.eta_s, ks, theta)
    if not den > 0.0:
        raise DomainError(f"theta={theta} lies beyond the orbit asymptotes")
    return ks / den / sc.k


def periapsis_theta(sc: Scenario, ks: float) -> float:
    """Polar angle of the closest approach."""
    rho1, rho2 = _turning_rho(sc.eta_s, ks)
    return math.pi - 2.0 * math.atan(math.sqrt(-rho2 / rho1))


def returning_point(sc: Scenario, ks: float) -> tuple[float, float]:
    """Point (r in pm, theta) where the incident Temple orbit hands over to the scattered one.

    For an attractive centre this is theta = 0 (y = 0); for a repulsive one it
    is fixed by E zeta + 2 Z e^2 = 0 with p y = 2 p s.
    """
    eta = sc.eta_s
    if sc.z > 0:
        return ks * ks / (2.0 * eta) / sc.k, 0.0
    # -Z e^2 / (E s) = -2 eta / ks
    theta = 2.0 * math.atan(-2.0 * eta / ks)
    s = ks / sc.k
    return 2.0 * s / math.sin(theta), theta


def rutherford_cross_section(sc: Scenario, theta_sc: float) -> tuple[float, float]:
    """Rutherford cross section (eta_s^2 / 4k^2) csc^4(theta/2).

    Returns
    -------
    (sigma * k^2, sigma in pm^2)
    """
    if theta_sc == 0.0 or abs(theta_sc) > math.pi:
        raise DomainError("scattering angle must satisfy 0 < |theta| <= pi")
    s = math.sin(0.5 * theta_sc)
    sig = sc.eta_s ** 2 / 4.0 / s ** 4
    return sig, sig / sc.k ** 2


def rutherford_from_impact(sc: Scenario, theta_sc: float) -> float:
    """sigma k^2 from s/sin(theta) |ds/dtheta| with ks = eta_s cot(|theta|/2)."""
    a = abs(theta_sc)
    ks = sc.eta_s / math.tan(0.5 * a)
    dks = 0.5 * sc.eta_s / math.sin(0.5 * a) ** 2
    return ks / math.sin(a) * dks


# ----------------------------------------------------------------- time elapse
def _polar_tau(eta: float, ks: float, rho: float, branch: Branch) -> float:
    rho1, rho2 = _turning_rho(eta, ks)
    d1 = max(rho - rho1, 0.0)
    d2 = rho - rho2
    a, b = math.sqrt(d1), math.sqrt(d2)
    # log|(a+b)/(a-b)| = 2 atanh(a/b) for a < b
    val = math.sqrt(d1 * d2) - eta * 2.0 * math.atanh(a / b)
    return -val if branch is Branch.INCIDENT else val


def _temple_tau_raw(eta: float, kx: float, kzeta: float, branch: Branch) -> float:
    q = kzeta * (kzeta + 4.0 * eta)
    if eta > 0:
        a, b = math.sqrt(kzeta), math.sqrt(kzeta + 4.0 * eta)
        lg = 2.0 * math.atanh(a / b) if a < b else 2.0 * math.atanh(b / a)
        inner = math.sqrt(q) - 2.0 * eta * lg
    else:
        a, b = math.sqrt(max(kzeta, 0.0)), math.sqrt(max(kzeta + 4.0 * eta, 0.0))
        inner = math.sqrt(max(q, 0.0)) - 2.0 * eta * 2.0 * math.atanh(b / a) if a > 0 else 0.0
    sgn = -1.0 if branch is Branch.INCIDENT else 1.0
    return 0.5 * (kzeta + sgn * inner) + kx


def _temple_branch_at(eta: float, ks: float, theta: float) -> Branch:
    return Branch.INCIDENT if theta > 0.0 else Branch.SCATTERED


def classical_time(sc: Scenario, ks: float, rho: float, theta: float, branch: Branch,
                   coordinates: Coordinates = Coordinates.POLAR) -> float:
    """Dimensionless time tau = 2E (t + t0) / hbar at an orbit point.

    The polar form is zero at the closest approach. The Temple form is shifted
    by one constant (its raw value at the closest approach) so both agree.
    ``branch`` refers to the polar branches (before/after closest approach);
    the Temple branch (before/after y = 0) is inferred from ``theta``.
    """
    branch = Branch(branch)
    if Coordinates(coordinates) is Coordinates.POLAR:
        return _polar_tau(sc.eta_s, ks, rho, branch)
    eta = sc.eta_s
    kx = rho * math.cos(theta)
    kzeta = rho * (1.0 - math.cos(theta))
    if sc.z > 0:
        tb = _temple_branch_at(eta, ks, theta)
    else:
        # the Temple incident branch runs on past periapsis to the returning point
        th_ret = returning_point(sc, ks)[1]
        tb = Branch.INCIDENT if branch is Branch.INCIDENT or theta > th_ret else Branch.SCATTERED
    raw = _temple_tau_raw(eta, kx, kzeta, tb)
    th_p = periapsis_theta(sc, ks)
    rho_p = ks / _temple_den(eta, ks, th_p)
    ref = _temple_tau_raw(eta, rho_p * math.cos(th_p), rho_p * (1.0 - math.cos(th_p)),
                          _temple_branch_at(eta, ks, th_p) if sc.z > 0 else Branch.INCIDENT)
    return raw - ref


def polar_orbit(sc: Scenario, ks: float, rho_grid) -> list[TrajectoryPoint]:
    """Classical orbit points for an incident pass down the grid and back out."""
    rho1, _ = _turning_rho(sc.eta_s, ks)
    pts = sorted(r for r in rho_grid if r >= rho1)
    out = []
    for r in reversed(pts):
        out.append(TrajectoryPoint(r, _polar_theta_rho(sc.eta_s, ks, r, Branch.INCIDENT),
                                   _polar_tau(sc.eta_s, ks, r, Branch.INCIDENT), Branch.INCIDENT))
    for r in pts:
        out.append(TrajectoryPoint(r, _polar_theta_rho(sc.eta_s, ks, r, Branch.SCATTERED),
                                   _polar_tau(sc.eta_s, ks, r, Branch.SCATTERED), Branch.SCATTERED))
    return out
