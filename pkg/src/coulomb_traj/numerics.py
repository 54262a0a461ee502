"""Root bracketing, finite differences and the Newtonian ODE oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .constants import E2_EV_PM, ELECTRON_MASS_EV, SPEED_OF_LIGHT_PM_S
from .errors import MaxIterations, NoSignChange, SingularityApproach

R_FLOOR_PM = 1e-3


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float

    @classmethod
    def of(cls, f: Callable[[float], float], lo: float, hi: float) -> "Bracket":
        return cls(lo, hi, f(lo), f(hi))


def solve_bracketed(f: Callable[[float], float], bracket: Bracket, tol: float = 1e-10,
                    max_iter: int = 200) -> float:
    """Root of ``f`` inside ``bracket`` by secant steps safeguarded with bisection.

    A secant step is accepted only if it lands strictly inside the current
    bracket and shrinks it by at least half within two iterations; otherwise
    the interval is bisected. The result never leaves the initial bracket.

    Raises
    ------
    NoSignChange
        ``f_lo`` and ``f_hi`` have the same strict sign.
    MaxIterations
        Tolerance not met within ``max_iter`` iterations.
    """
    a, b, fa, fb = bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi
    if a > b:
        a, b, fa, fb = b, a, fb, fa
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise NoSignChange(f"no sign change on [{a}, {b}]: f={fa:.3g}, {fb:.3g}")
    width = b - a
    for it in range(max_iter):
        if it % 3 == 2 and (b - a) > 0.5 * width:
            m = 0.5 * (a + b)
        else:
            m = b - fb * (b - a) / (fb - fa)
            if not (a < m < b):
                m = 0.5 * (a + b)
        if it % 3 == 2:
            width = b - a
        fm = f(m)
        if fm == 0.0:
            return m
        if math.copysign(1.0, fm) == math.copysign(1.0, fa):
            a, fa = m, fm
        else:
            b, fb = m, fm
        r = a if abs(fa) < abs(fb) else b
        if abs(min(fa, fb, key=abs)) <= tol or (b - a) <= tol * max(1.0, abs(r)):
            return r
    raise MaxIterations("solve_bracketed exhausted its iterations", max_iter, b - a)


def scan_roots(f: Callable[[float], float], grid: Sequence[float]) -> list[Bracket]:
    """Brackets of every sign change of ``f`` sampled on ``grid``."""
    xs = list(grid)
    fs = [f(x) for x in xs]
    out = []
    for x0, x1, f0, f1 in zip(xs, xs[1:], fs, fs[1:]):
        if np.isfinite(f0) and np.isfinite(f1) and f0 * f1 <= 0.0 and not (f0 == 0.0 and f1 == 0.0):
            out.append(Bracket(x0, x1, f0, f1))
    return out


def central_difference(f: Callable[[float], complex], x: float, h: float) -> complex:
    """Second-order central difference ``(f(x+h) - f(x-h)) / 2h``."""
    return (f(x + h) - f(x - h)) / (2.0 * h)


# ------------------------------------------------------------------ ODE oracle
@dataclass(frozen=True)
class OdeState:
    """Point of a Newtonian trajectory: position in pm, velocity in pm/s, time in s."""

    x: float
    y: float
    vx: float
    vy: float
    t: float


def coulomb_strength(z: int) -> float:
    """Z e^2 / m in pm^3/s^2 (positive = attractive)."""
    return z * E2_EV_PM / ELECTRON_MASS_EV * SPEED_OF_LIGHT_PM_S ** 2


def energy_per_mass(s: OdeState, z: int) -> float:
    return 0.5 * (s.vx * s.vx + s.vy * s.vy) - coulomb_strength(z) / math.hypot(s.x, s.y)


def angular_momentum_per_mass(s: OdeState) -> float:
    return s.x * s.vy - s.y * s.vx


def speed_for_energy(energy_ev: float) -> float:
    """Non-relativistic speed in pm/s for kinetic energy ``energy_ev``."""
    return math.sqrt(2.0 * energy_ev / ELECTRON_MASS_EV) * SPEED_OF_LIGHT_PM_S


def integrate_newton(initial: OdeState, energy_ev: float, z: int, t_end: float,
                     rtol: float = 1e-12, atol_scale: float = 1e-14, r_floor: float = R_FLOOR_PM,
                     events: Sequence[Callable] = (), dense_times: Sequence[float] | None = None):
    """Integrate m a = -Z e^2 r / r^3 with an adaptive 8(5,3) Runge-Kutta pair.

    Parameters
    ----------
    initial : OdeState
        Start state; ``energy_ev`` is only used to scale tolerances.
    t_end : float
        Final time in seconds (absolute, same clock as ``initial.t``).
    events : callables ``g(t, y)``
        Extra event functions passed to the integrator; their crossing times
        are returned.

    Returns
    -------
    states : list of OdeState
        Solver steps (or ``dense_times`` samples when given).
    event_times : list of arrays
        Crossing times for each entry of ``events``.
    """
    k_str = coulomb_strength(z)
    v0 = speed_for_energy(energy_ev)
    r0 = math.hypot(initial.x, initial.y)
    # integrate in units of r0 / v0: the event root finder uses an absolute
    # time tolerance near 1e-15, far too coarse for times measured in seconds
    t_scale = r0 / v0
    t0 = initial.t

    def rhs(t, u):
        x, y, vx, vy = u
        r = math.hypot(x, y)
        c = -k_str / (r * r * r) * t_scale
        return [vx * t_scale, vy * t_scale, c * x, c * y]

    def floor(t, u):
        return math.hypot(u[0], u[1]) - r_floor

    floor.terminal = True
    wrapped = [floor]
    for ev in events:
        def g(t, u, ev=ev):
            return ev(t0 + t * t_scale, u)
        g.terminal = getattr(ev, "terminal", False)
        g.direction = getattr(ev, "direction", 0)
        wrapped.append(g)
    atol = np.array([r0, r0, v0, v0]) * atol_scale
    t_eval = None if dense_times is None else (np.asarray(dense_times) - t0) / t_scale
    sol = solve_ivp(rhs, (0.0, (t_end - t0) / t_scale), [initial.x, initial.y, initial.vx, initial.vy],
                    method="DOP853", rtol=rtol, atol=atol, events=wrapped, t_eval=t_eval)
    if sol.t_events[0].size:
        raise SingularityApproach(f"trajectory reached r < {r_floor} pm")
    times = t0 + sol.t * t_scale
    states = [OdeState(*sol.y[:, i], times[i]) for i in range(sol.t.size)]
    return states, [t0 + te * t_scale for te in sol.t_events[1:]]


def deflection_run(energy_ev: float, z: int, impact_pm: float, r_launch: float = 1e7,
                   r_mark: float | None = None):
    """Integrate a scattering run from ``r_launch`` back out to ``r_launch``.

    The launch velocity is chosen so the total energy is ``energy_ev`` and the
    angular momentum equals that of impact parameter ``impact_pm`` at infinity.

    Returns
    -------
    dict
        ``deflection`` (rad, polar angle of the outgoing velocity measured
        from +x, negative for an attractive centre), ``states``, ``energy_drift``, ``l_drift``
        and, when ``r_mark`` is given, the two times at which ``r = r_mark``.
    """
    v_inf = speed_for_energy(energy_ev)
    k_str = coulomb_strength(z)
    l_mom = v_inf * impact_pm
    # incoming from x = -inf (polar angle pi) at height y = +s, moving along +x
    x0 = -math.sqrt(r_launch * r_launch - impact_pm * impact_pm)
    b = impact_pm
    v = math.sqrt(v_inf * v_inf + 2.0 * k_str / r_launch)
    # direction a with |v| fixed and angular momentum x vy - y vx = -v_inf s
    phi = math.atan2(b, x0)
    a = phi - math.pi + math.asin(l_mom / (v * r_launch))
    vx, vy = v * math.cos(a), v * math.sin(a)
    start = OdeState(x0, b, vx, vy, 0.0)
    t_end = 3.0 * r_launch / v_inf
    events = []
    if r_mark is not None:
        def mark(t, u):
            return math.hypot(u[0], u[1]) - r_mark
        events.append(mark)

    def out(t, u):
        return math.hypot(u[0], u[1]) - r_launch * 1.0000001

    out.terminal = True
    out.direction = 1
    events.append(out)
    states, ev = integrate_newton(start, energy_ev, z, t_end, events=events)
    end = states[-1]
    e0 = energy_per_mass(start, z)
    l0 = angular_momentum_per_mass(start)
    res = {
        "start": start,
        "states": states,
        "deflection": math.atan2(end.vy, end.vx),
        "energy_drift": abs(energy_per_mass(end, z) - e0) / abs(e0),
        "l_drift": abs(angular_momentum_per_mass(end) - l0) / abs(l0),
    }
    if r_mark is not None:
        res["mark_times"] = ev[0]
    return res
