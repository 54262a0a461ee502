"""Mode characteristic functions and m-trajectories from the polar wave function.

The angular part uses the travelling wave Y_nu = Q_nu + i (pi/2) P_nu of
x = cos(theta); the radial part the outgoing Coulomb wave
u = e^{-i rho} rho^{nu+1} u~ built from two Kummer M functions (small rho) or
from one Kummer U function (large rho). Parameter derivatives are propagated
as second-order jets in (nu, eta_s, rho).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .classical import Branch, Scenario, TrajectoryPoint
from .errors import DomainError, NoSignChange
from .numerics import Bracket, scan_roots, solve_bracketed
from .specfun.gamma import polygamma
from .specfun.jets import Jet, jexp, jlog, jloggamma
from .specfun.kummer import ASYMPTOTIC_MIN, SERIES_MAX, m_series_jet, u_asymptotic_jet
from .specfun.legendre import legendre_jets
from .specfun.types import Regime

HALF_PI = 0.5 * math.pi

# b = 2 nu + 2 within this distance of an integer triggers interpolation in nu
NEAR_INT_B = 4e-3
_NODES = np.array([-6e-3, -4e-3, -2e-3, 2e-3, 4e-3, 6e-3])


@dataclass(frozen=True)
class ModeParams:
    """Mode parameters (nu, mu). Only mu = 0 is supported; nu > -1/2."""

    nu: float
    mu: int = 0

    def __post_init__(self):
        if not self.nu > -0.5:
            raise DomainError("nu must exceed -1/2")
        if self.mu != 0:
            raise DomainError("only mu = 0 is supported")


# ------------------------------------------------------------------- angular
@dataclass(frozen=True)
class YJet:
    """Y = Q + i(pi/2) P with nu-derivatives (0, 1, 2) and d/dtheta (0, 1 in nu)."""

    y: tuple
    y_theta: tuple
    regime: Regime


def _y_jet(theta: float, nu: float, from_pi: bool = False) -> YJet:
    """Evaluate Y at ``theta`` (or at ``pi - theta`` when ``from_pi``)."""
    h = 0.5 * theta
    if from_pi:
        # theta here is the supplement delta = pi - angle
        omx, opx, x = 2.0 * math.cos(h) ** 2, 2.0 * math.sin(h) ** 2, -math.cos(theta)
        sin_t = math.sin(theta)
    else:
        omx, opx, x = 2.0 * math.sin(h) ** 2, 2.0 * math.cos(h) ** 2, math.cos(theta)
        sin_t = math.sin(theta)
    j = legendre_jets(nu, x, omx, opx)
    y = tuple(complex(q, HALF_PI * p) for p, q in zip(j.p, j.q))
    yx = tuple(complex(q, HALF_PI * p) for p, q in zip(j.dp_dx, j.dq_dx))
    y_theta = (-sin_t * yx[0], -sin_t * yx[1])
    return YJet(y, y_theta, j.regime)


def _check_theta(theta: float) -> None:
    if not (0.0 <= theta <= math.pi):
        raise DomainError(f"theta={theta} outside [0, pi]")


def dnu_w_theta(theta: float, nu: float) -> float:
    """d W_theta / d nu on [0, pi]; rises from 0 at theta = 0 to pi at theta = pi."""
    _check_theta(theta)
    if theta == 0.0:
        return 0.0
    if theta == math.pi:
        return math.pi
    j = _y_jet(theta, nu)
    return (j.y[1] / j.y[0]).imag


def dnu_w_theta_near_pi(delta: float, nu: float) -> float:
    """d W_theta / d nu at theta = pi - delta, accurate for tiny ``delta``."""
    if delta == 0.0:
        return math.pi
    j = _y_jet(delta, nu, from_pi=True)
    return (j.y[1] / j.y[0]).imag


def dnu_w_theta_signed(theta: float, nu: float) -> float:
    """Odd extension of d W_theta / d nu to theta in [-pi, pi]."""
    if theta < 0.0:
        return -dnu_w_theta(-theta, nu)
    return dnu_w_theta(theta, nu)


def w_theta_derivatives(theta: float, nu: float):
    """(d_nu W, d2_nu W, d_theta d_nu W) at theta in (0, pi)."""
    j = _y_jet(theta, nu)
    r1 = j.y[1] / j.y[0]
    r2 = j.y[2] / j.y[0]
    rt = j.y_theta[0] / j.y[0]
    rtn = j.y_theta[1] / j.y[0]
    return r1.imag, (r2 - r1 * r1).imag, (rtn - r1 * rt).imag


def _w_theta_value(theta: float, nu: float) -> float:
    if theta == 0.0:
        return 0.0
    if theta == math.pi:
        # value defined by the limiting ratio of P and Q (modulo pi the
        # interior phase tends to the same value, from pi (nu + 1))
        return math.pi * nu
    step = min(0.05, 0.5 / (nu + 1.0))
    n = max(1, int(math.ceil(theta / step)))
    grid = np.linspace(0.0, theta, n + 1)[1:]
    w = None
    prev = 0.0
    for t in grid:
        a = cmath.phase(_y_jet(float(t), nu).y[0])
        if w is None:
            # Y -> Q -> +infinity as theta -> 0, so the principal value is the branch
            w = a
        else:
            d = (a - prev + math.pi) % (2.0 * math.pi) - math.pi
            w += d
        prev = a
    return w


def w_theta(theta: float, nu: float, d: int = 0) -> float:
    """Angular mode characteristic function W_theta and its nu-derivatives.

    Parameters
    ----------
    theta : float
        Polar angle in [0, pi].
    nu : float
        Degree, ``nu > -1/2``.
    d : int
        0 for the continuous phase of Y_nu (zero at theta = 0), 1 or 2 for
        nu-derivatives.

    Notes
    -----
    The endpoints return the values fixed by the limiting behaviour of P and
    Q: 0 at theta = 0 and pi nu at theta = pi. Inside, the continuous phase
    approaches pi (nu + 1) logarithmically as theta -> pi, which coincides
    with pi nu modulo pi (the arctangent form only fixes W modulo pi).
    """
    _check_theta(theta)
    if nu <= -0.5:
        raise DomainError("nu must exceed -1/2")
    if d == 0:
        return _w_theta_value(theta, nu)
    if d == 1:
        return dnu_w_theta(theta, nu)
    if d == 2:
        if theta in (0.0, math.pi):
            return 0.0
        return w_theta_derivatives(theta, nu)[1]
    raise ValueError("d must be 0, 1 or 2")


# -------------------------------------------------------------------- radial
@dataclass(frozen=True)
class RadialWave:
    """Outgoing radial wave and its derivatives at one rho.

    ``dE_u_scaled`` is 2E du/dE at fixed r. ``jet`` holds the second-order jet
    of u in (nu, eta_s, rho) for further derived quantities.
    """

    u: complex
    u_tilde: complex
    dnu_u: complex
    dE_u_scaled: complex
    regime: Regime
    err_estimate: float
    jet: Jet


def _u_tilde_series(rho: float, eta: float, nu: float):
    a = Jet.linear(nu + 1.0 + 1j * eta, [1.0, 1j, 0.0])
    b = Jet.linear(2.0 * nu + 2.0, [2.0, 0.0, 0.0])
    z = Jet.linear(2j * rho, [0.0, 0.0, 2j])
    A = 1.0 + a - b
    B = 2.0 - b
    m1, e1 = m_series_jet(a.v, b.v, z.v, 2)
    m2, e2 = m_series_jet(A.v, B.v, z.v, 2)
    m1 = m1.compose([a, b, z])
    m2 = m2.compose([A, B, z])
    c1 = -1.0 * jexp(-1j * math.pi * b + jloggamma(1.0 - b) + jloggamma(b - a) - jloggamma(1.0 - a))
    c2 = jexp(jloggamma(b - 1.0) + (1.0 - b) * jlog(z))
    t1, t2 = c1 * m1, c2 * m2
    ut = t1 + t2
    err = (abs(t1.v) * e1 + abs(t2.v) * e2 + 2.2e-16 * (abs(t1.v) + abs(t2.v))) / abs(ut.v)
    return ut, err


def _u_tilde_asymptotic(rho: float, eta: float, nu: float):
    b = Jet.linear(2.0 * nu + 2.0, [2.0, 0.0, 0.0])
    abar = Jet.linear(nu + 1.0 - 1j * eta, [1.0, -1j, 0.0])
    z = Jet.linear(2j * rho, [0.0, 0.0, 2j])
    u, err = u_asymptotic_jet(abar.v, b.v, -z.v, order=2)
    u = u.compose([abar, b, -1.0 * z])
    ut = -1.0 * jexp(-1j * math.pi * b + jloggamma(abar) + z) * u
    return ut, err + 2.2e-16


def _near_integer_b(nu: float) -> bool:
    b = 2.0 * nu + 2.0
    return abs(b - round(b)) < NEAR_INT_B


def _u_tilde(rho: float, eta: float, nu: float):
    cands = []
    if 2.0 * rho >= SERIES_MAX:
        ut, err = _u_tilde_asymptotic(rho, eta, nu)
        cands.append((err, ut, Regime.ASYMPTOTIC))
    if 2.0 * rho <= ASYMPTOTIC_MIN:
        if _near_integer_b(nu):
            ut, err = _interpolated_series(rho, eta, nu)
        else:
            ut, err = _u_tilde_series(rho, eta, nu)
        cands.append((err, ut, Regime.SERIES))
    err, ut, regime = min(cands, key=lambda c: c[0])
    return ut, err, regime


def _interpolated_series(rho: float, eta: float, nu: float):
    """Series form at nu where b is (nearly) an integer, by Lagrange interpolation in nu.

    The two series terms carry Gamma(1 - b) poles that cancel in the sum; at
    nodes a few 1e-3 away the cancellation costs only about three digits.
    """
    b0 = round(2.0 * nu + 2.0)
    nu0 = 0.5 * b0 - 1.0
    nodes = nu0 + _NODES
    jets, errs = [], []
    for n in nodes:
        ut, e = _u_tilde_series(rho, eta, float(n))
        jets.append(ut)
        errs.append(e)
    # weights of the interpolating polynomial and its first two derivatives at nu
    xs = nodes - nu
    w0, w1, w2 = _lagrange_weights(xs)
    v = sum(w * j.v for w, j in zip(w0, jets))
    g = sum(w * j.g for w, j in zip(w0, jets))
    h = sum(w * j.h for w, j in zip(w0, jets))
    # nu-derivatives come from differentiating the interpolant in nu
    g = g.copy()
    h = h.copy()
    g[0] = sum(w * j.v for w, j in zip(w1, jets))
    h[0, 0] = sum(w * j.v for w, j in zip(w2, jets))
    h[0, 1:] = sum(w * j.g[1:] for w, j in zip(w1, jets))
    h[1:, 0] = h[0, 1:]
    err = max(errs) * 1e3 + 1e-13
    return Jet(v, g, h), err


def _lagrange_weights(xs: np.ndarray):
    """Weights giving p(0), p'(0), p''(0) of the polynomial through (xs, f)."""
    n = len(xs)
    V = np.vander(xs, n, increasing=True)
    inv = np.linalg.inv(V)
    # p(x) = sum_c coef_c x^c with coef = inv @ f
    return inv[0], inv[1], 2.0 * inv[2]


def _u_jet(rho: float, eta: float, nu: float):
    ut, err, regime = _u_tilde(rho, eta, nu)
    r = Jet.linear(rho, [0.0, 0.0, 1.0])
    n = Jet.linear(nu, [1.0, 0.0, 0.0])
    pref = jexp(-1j * r + (n + 1.0) * jlog(r))
    return pref * ut, ut, err, regime


def radial_wave(rho: float, sc: Scenario, nu: float) -> RadialWave:
    """Outgoing radial Coulomb wave u(rho) and its nu- and energy derivatives.

    Parameters
    ----------
    rho : float
        ``k r > 0``.
    sc : Scenario
    nu : float
        ``nu > -1/2``. Values where ``b = 2 nu + 2`` is (nearly) an integer
        are handled by interpolation in nu.
    """
    if nu <= -0.5:
        raise DomainError("nu must exceed -1/2")
    if not rho > 0.0:
        raise DomainError("radial_wave needs rho > 0 (use w_r for the rho = 0 limits)")
    eta = sc.eta_s
    u, ut, err, regime = _u_jet(rho, eta, nu)
    return RadialWave(u.v, ut.v, u.g[0], rho * u.g[2] - eta * u.g[1], regime, err, u)


def _log_u_jet(rho: float, eta: float, nu: float) -> Jet:
    u, _, _, _ = _u_jet(rho, eta, nu)
    return jlog(u)


def dnu_w_r(rho: float, sc: Scenario, nu: float) -> float:
    """d W_r / d nu = Im(d_nu u / u) + pi; zero at rho = 0."""
    if rho == 0.0:
        return 0.0
    lu = _log_u_jet(rho, sc.eta_s, nu)
    return lu.g[0].imag + math.pi


def tau_r(rho: float, sc: Scenario, nu: float) -> float:
    """2E dW_r/dE = Im(2E d_E u / u); zero at rho = 0."""
    if rho == 0.0:
        return 0.0
    lu = _log_u_jet(rho, sc.eta_s, nu)
    return (rho * lu.g[2] - sc.eta_s * lu.g[1]).imag


def radial_quantities(rho: float, sc: Scenario, nu: float) -> tuple[float, float, float]:
    """(dW_r/dnu, Tau, dTau/drho) from one wave evaluation."""
    if rho == 0.0:
        return 0.0, 0.0, math.nan
    eta = sc.eta_s
    lu = _log_u_jet(rho, eta, nu)
    dnu = lu.g[0].imag + math.pi
    tau = (rho * lu.g[2] - eta * lu.g[1]).imag
    dtau = (lu.g[2] + rho * lu.h[2, 2] - eta * lu.h[1, 2]).imag
    return dnu, tau, dtau


def _w_r_value(rho: float, sc: Scenario, nu: float) -> float:
    if rho == 0.0:
        return -HALF_PI
    eta = sc.eta_s
    start = min(rho, 1e-4)

    def phase(r):
        ut, _, _ = _u_tilde(r, eta, nu)
        # arg u = -r + arg u~ (rho^{nu+1} is real and positive)
        return cmath.phase(ut.v)

    # anchor: near rho = 0 the continuous W_r is close to -pi/2
    a0 = phase(start)
    w = a0 - start + math.pi * nu
    w += 2.0 * math.pi * round((-HALF_PI - w) / (2.0 * math.pi))
    n = max(1, int(math.ceil((rho - start) / 0.25)))
    prev = a0
    for r in np.linspace(start, rho, n + 1)[1:]:
        a = phase(float(r))
        w += (a - prev + math.pi) % (2.0 * math.pi) - math.pi
        prev = a
    return w - (rho - start)


def w_r(rho: float, sc: Scenario, nu: float, which: str = "Value") -> float:
    """Radial mode characteristic function W_r = Im log u + pi nu.

    ``which`` selects ``"Value"`` (continuous phase, -pi/2 at rho = 0),
    ``"DNu"`` (dW_r/dnu) or ``"Tau"`` (2E dW_r/dE).
    """
    if nu <= -0.5:
        raise DomainError("nu must exceed -1/2")
    if rho < 0.0:
        raise DomainError("rho must be non-negative")
    if which == "Value":
        return _w_r_value(rho, sc, nu)
    if which == "DNu":
        return dnu_w_r(rho, sc, nu)
    if which == "Tau":
        return tau_r(rho, sc, nu)
    raise ValueError("which must be Value, DNu or Tau")


# -------------------------------------------------------------------- angles
@dataclass(frozen=True)
class ModeAngle:
    """Root of a d_nu W_theta equation: ``raw`` in (0, pi) and the signed angle."""

    raw: float
    signed: float

    @property
    def degrees(self) -> float:
        return math.degrees(self.signed)


def _im_psi(sc: Scenario, nu: float) -> float:
    return polygamma(0, complex(nu + 1.0, sc.eta_s)).imag


def _solve_abs(t: float, nu: float, tol: float = 1e-12) -> tuple[float, float]:
    """Root theta in (0, pi) of d_nu W_theta(theta) = t, returned as (theta, pi - theta).

    Roots beyond theta = 3.1 are solved in log of the supplement, since the
    approach of d_nu W_theta to pi is logarithmic and can sit closer to pi
    than a double resolves.
    """
    def f(th):
        return dnu_w_theta(th, nu) - t

    # d_nu W_theta is increasing in theta
    lo, f_lo = 0.0, -t
    for th in (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.1):
        v = f(th)
        if v >= 0.0:
            root = solve_bracketed(f, Bracket(lo, th, f_lo, v), tol=tol)
            return root, math.pi - root
        lo, f_lo = th, v

    def g(log_d):
        return dnu_w_theta_near_pi(math.exp(log_d), nu) - t

    hi_l, lo_l = math.log(math.pi - lo), math.log(1e-150)
    g_lo = g(lo_l)
    if g_lo < 0.0:
        raise NoSignChange(f"target {t:.17g} within 1e-150 of pi: unresolvable")
    log_d = solve_bracketed(g, Bracket(lo_l, hi_l, g_lo, f_lo), tol=tol)
    d = math.exp(log_d)
    return math.pi - d, d


def _solve_signed(target: float, nu: float, tol: float = 1e-12) -> float:
    """theta in [-pi, pi] with odd-extended d_nu W_theta(theta) = target."""
    if abs(target) >= math.pi:
        raise NoSignChange(f"target {target:.6g} outside the range (-pi, pi) of d_nu W_theta")
    if target == 0.0:
        return 0.0
    return math.copysign(_solve_abs(abs(target), nu, tol)[0], target)


def scattering_angle_mode(sc: Scenario, nu: float) -> ModeAngle:
    """Scattering angle of the m-trajectory with mode parameter ``nu``.

    Solves d_nu W_theta(theta) = 2 |Im psi(a)| for the raw root in (0, pi); the
    signed angle is negative for an attractive centre (the outgoing branch
    lies at theta < 0).
    """
    if nu < -0.5:
        raise DomainError("nu must exceed -1/2")
    target = -2.0 * _im_psi(sc, nu)
    th = _solve_signed(target, nu)
    return ModeAngle(abs(th), th)


def limiting_angle(sc: Scenario) -> ModeAngle:
    """Largest deflection reachable by the mode trajectories (nu = 0)."""
    return scattering_angle_mode(sc, 0.0)


def returning_theta(sc: Scenario, nu: float) -> float:
    """Signed angle where the trajectory passes rho = 0: d_nu W_theta = pi/2 - Im psi(a)."""
    return _solve_signed(HALF_PI - _im_psi(sc, nu), nu)


# ---------------------------------------------------------------- trajectory
def trajectory_polar(sc: Scenario, nu: float, rho_grid: Iterable[float],
                     skip_failures: bool = False) -> list[TrajectoryPoint]:
    """m-trajectory through the origin.

    The incident branch is evaluated on the grid in descending rho and ends at
    the returning point (rho = 0, theta_ret, tau = 0); the scattered branch
    then runs through the grid in ascending rho. ``rho_grid`` holds
    non-negative radii in any order.
    """
    rhos = sorted({float(r) for r in rho_grid if r > 0.0})
    ip = _im_psi(sc, nu)
    rows = []
    for r in rhos:
        dnu, tau, _ = radial_quantities(r, sc, nu)
        rows.append((r, dnu, tau))
    inc, sct = [], []
    for r, dnu, tau in reversed(rows):
        try:
            th = _solve_signed(HALF_PI - ip - dnu, nu)
        except NoSignChange:
            if not skip_failures:
                raise
            continue
        inc.append(TrajectoryPoint(r, th, -tau, Branch.INCIDENT))
    inc.append(TrajectoryPoint(0.0, returning_theta(sc, nu), 0.0, Branch.INCIDENT))
    for r, dnu, tau in rows:
        try:
            th = _solve_signed(dnu - ip + HALF_PI, nu)
        except NoSignChange:
            if not skip_failures:
                raise
            continue
        sct.append(TrajectoryPoint(r, th, tau, Branch.SCATTERED))
    return inc + sct


# ------------------------------------------------------------- cross section
@dataclass(frozen=True)
class CrossSectionSample:
    """Differential cross section at one scattering angle.

    ``sigma_inv_k2`` is sigma k^2 (units of 1/k^2), ``sigma_pm2`` in pm^2.
    """

    theta_sc: float
    sigma_inv_k2: float
    sigma_pm2: float


def dnu_dtheta_mode(sc: Scenario, nu: float) -> tuple[ModeAngle, float]:
    """Scattering angle and d nu / d theta_raw along the mode family."""
    ang = scattering_angle_mode(sc, nu)
    _, d2, dth = w_theta_derivatives(ang.raw, nu)
    s = 1.0 if sc.z > 0 else -1.0
    im_psi1 = s * polygamma(1, complex(nu + 1.0, sc.eta_s)).imag
    return ang, dth / (2.0 * im_psi1 - d2)


def cross_section_mode(sc: Scenario, nu: float) -> CrossSectionSample:
    """Cross section sigma = (nu + 1/2) / sin(theta) |d nu / d theta| / k^2."""
    ang, dndt = dnu_dtheta_mode(sc, nu)
    st = math.sin(ang.raw)
    if st == 0.0:
        raise DomainError("sin(theta_sc) = 0")
    sig = (nu + 0.5) / st * abs(dndt)
    return CrossSectionSample(ang.signed, sig, sig / sc.k ** 2)


# --------------------------------------------------------------------- dt/drho
def dtau_drho(rho: float, sc: Scenario, nu: float) -> float:
    """2E d/drho (dW_r/dE), i.e. d Tau / d rho."""
    return radial_quantities(rho, sc, nu)[2]


def dt_drho_scan(sc: Scenario, nu: float, rho_grid: Sequence[float]) -> float | None:
    """First sign change of d Tau / d rho on the grid, refined to a root; None if absent."""
    grid = sorted(float(r) for r in rho_grid if r > 0.0)
    br = scan_roots(lambda r: dtau_drho(r, sc, nu), grid)
    if not br:
        return None
    return solve_bracketed(lambda r: dtau_drho(r, sc, nu), br[0], tol=1e-12)
