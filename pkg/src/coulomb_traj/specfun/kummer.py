"""Kummer functions M, U and the companion V with parameter derivatives.

Small ``|z|`` uses the power series (double-double accumulation), large
``|z|`` the asymptotic series of U. Inside the crossfade band both are
evaluated and the one with the smaller error estimate wins.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from ..errors import DomainError, NonConvergence, PoleError
from ._kernels import kummer_m_series, kummer_u_asymptotic
from .gamma import EULER_GAMMA, loggamma, polygamma, rgamma
from .jets import Jet, jcos, jexp, jlog, jloggamma
from .types import DerivOrder, EvalResult, Regime, as_order

SERIES_MAX = 25.0
ASYMPTOTIC_MIN = 35.0
MAX_TERMS = 10000
RTOL = 1e-17
_EPS = 2.220446049250313e-16
_DD_EPS = 1.0e-31

_SLOT = {(1, 0): (0,), (0, 1): (1,), (2, 0): (0, 0), (1, 1): (0, 1), (0, 2): (1, 1)}


def _nonpos_int(c: complex) -> bool:
    return c.imag == 0.0 and c.real <= 0.0 and c.real == math.floor(c.real)


def _is_int(c: complex) -> bool:
    return c.imag == 0.0 and c.real == math.floor(c.real)


# ----------------------------------------------------------------- raw jets
def m_series_jet(a: complex, b: complex, z: complex, order: int = 2):
    """Jet of M(a, b, z) in the variables (a, b, z) from the power series."""
    a, b, z = complex(a), complex(b), complex(z)
    if _nonpos_int(b):
        raise PoleError(f"Kummer M: b={b.real:g} is a non-positive integer")
    if z == 0:
        h = np.zeros((3, 3), complex)
        h[2, 2] = a * (a + 1.0) / (b * (b + 1.0))
        return Jet(1.0, np.array([0.0, 0.0, a / b], complex), h), _EPS
    s, info = kummer_m_series(a, b, z, order, MAX_TERMS, RTOL)
    if info[3] == 0.0:
        raise NonConvergence("Kummer M series did not converge", int(info[0]), float(info[2]))
    iz = 1.0 / z
    g = np.array([s[1], s[2], s[6] * iz])
    h = np.array([[s[3], s[4], s[7] * iz],
                  [s[4], s[5], s[8] * iz],
                  [s[7] * iz, s[8] * iz, s[12] * iz * iz]])
    scale = max(abs(s[0]), 1e-300)
    err = _EPS + (_DD_EPS * info[1] * math.sqrt(info[0]) + info[2]) / scale
    return Jet(s[0], g, h), err


def u_asymptotic_jet(A: complex, B: complex, w: complex, logw: complex | None = None,
                     order: int = 2):
    """Jet of U(A, B, w) in (A, B, w) from the large-|w| expansion.

    ``logw`` selects the branch of ``w^{-A}``; by default the principal log.
    """
    A, B, w = complex(A), complex(B), complex(w)
    if w == 0:
        raise DomainError("U asymptotic series needs w != 0")
    logw = cmath.log(w) if logw is None else complex(logw)
    s, info = kummer_u_asymptotic(A, B, w, order, MAX_TERMS, RTOL)
    iw = 1.0 / w
    g = np.array([s[1], s[2], -s[6] * iw])
    h = np.array([[s[3], s[4], -s[7] * iw],
                  [s[4], s[5], -s[8] * iw],
                  [-s[7] * iw, -s[8] * iw, s[12] * iw * iw]])
    S = Jet(s[0], g, h)
    Aj = Jet.linear(A, [1.0, 0.0, 0.0])
    lw = Jet(logw, np.array([0.0, 0.0, iw]), np.zeros((3, 3), complex))
    lw.h[2, 2] = -iw * iw
    scale = max(abs(s[0]), 1e-300)
    err = _EPS * (1.0 + info[1] / scale) + info[2] / scale
    return jexp(-1.0 * (Aj * lw)) * S, err


def _terminates(A: complex, B: complex) -> bool:
    return _nonpos_int(A) or _nonpos_int(A - B + 1.0)


def m_asymptotic_jet(a: complex, b: complex, z: complex, order: int = 2):
    """Jet of M(a, b, z) in (a, b, z) from the connection to two U functions."""
    a, b, z = complex(a), complex(b), complex(z)
    if _nonpos_int(a) or _nonpos_int(b - a):
        raise DomainError("asymptotic M form needs a, b-a off the non-positive integers")
    sgn = 1.0 if z.imag >= 0.0 else -1.0
    # M/Gamma(b) = e^{+-i pi a} U(a,b,z)/Gamma(b-a) + e^{-+i pi (b-a)} e^z U(b-a,b,-z)/Gamma(a)
    aj = Jet.linear(a, [1.0, 0.0, 0.0])
    bj = Jet.linear(b, [0.0, 1.0, 0.0])
    zj = Jet.linear(z, [0.0, 0.0, 1.0])
    u1, e1 = u_asymptotic_jet(a, b, z, order=order)
    u2, e2 = u_asymptotic_jet(b - a, b, -z, logw=cmath.log(z) - sgn * 1j * math.pi, order=order)
    u2 = u2.compose([bj - aj, bj, -1.0 * zj])
    lb = jloggamma(bj)
    t1 = jexp(lb - jloggamma(bj - aj) + sgn * 1j * math.pi * aj) * u1
    t2 = jexp(lb - jloggamma(aj) - sgn * 1j * math.pi * (bj - aj) + zj) * u2
    m = t1 + t2
    err = (abs(t1.v) * e1 + abs(t2.v) * e2) / max(abs(m.v), 1e-300) + _EPS
    return m, err


def m_jet(a: complex, b: complex, z: complex, order: int = 2):
    """Jet of M(a, b, z) choosing the regime by |z|. Returns (jet, err, regime)."""
    r = abs(z)
    cands = []
    if r <= ASYMPTOTIC_MIN or _nonpos_int(a) or _nonpos_int(b - a):
        try:
            jet, err = m_series_jet(a, b, z, order)
            cands.append((err, jet, Regime.SERIES))
        except NonConvergence:
            if r <= SERIES_MAX:
                raise
    if r >= SERIES_MAX and not (_nonpos_int(a) or _nonpos_int(b - a)):
        jet, err = m_asymptotic_jet(a, b, z, order)
        cands.append((err, jet, Regime.ASYMPTOTIC))
    if not cands:
        raise NonConvergence("Kummer M: no representation met tolerance")
    err, jet, regime = min(cands, key=lambda c: c[0])
    return jet, err, regime


def _pick(jet: Jet, d: DerivOrder):
    if d.total == 0:
        return jet.v
    idx = _SLOT[(d.wrt_a, d.wrt_b)]
    return (jet.v, jet.g[idx[0]] if len(idx) == 1 else jet.h[idx])


def kummer_M(a, b, z, d: DerivOrder | tuple | None = None) -> EvalResult:
    """Kummer function M(a, b, z) and optionally one parameter derivative.

    Parameters
    ----------
    a, b, z : complex
        ``b`` must not be a non-positive integer.
    d : DerivOrder or (int, int), optional
        Orders of ``d/da`` and ``d/db`` (total at most 2).

    Returns
    -------
    EvalResult
        ``value`` is M, or ``(M, derivative)`` when ``d`` is non-zero.
    """
    d = as_order(d)
    jet, err, regime = m_jet(a, b, z, max(d.total, 0))
    return EvalResult(_pick(jet, d), err, regime)


# ----------------------------------------------------------------------- U
def u1_small(a: complex, z: complex):
    """U(a, 1, z), dU/da, dU/dz from the logarithmic representation.

    U(a,1,z) = -[(log z + psi(a) + 2 gamma) M + M_a + 2 M_b] / Gamma(a), with M
    and its derivatives evaluated at b = 1.
    """
    a, z = complex(a), complex(z)
    if z == 0:
        raise DomainError("U(a, 1, z) is singular at z = 0")
    if _nonpos_int(a):
        raise PoleError("log form of U(a, 1, z) needs a off the non-positive integers")
    mj, err = m_series_jet(a, 1.0, z, 2)
    M, Ma, Mb, Mz = mj.v, mj.g[0], mj.g[1], mj.g[2]
    Maa, Mab, Maz, Mbz = mj.h[0, 0], mj.h[0, 1], mj.h[0, 2], mj.h[1, 2]
    psi = polygamma(0, a)
    L = cmath.log(z) + psi + 2.0 * EULER_GAMMA
    R = rgamma(a)
    G = L * M + Ma + 2.0 * Mb
    Ga = polygamma(1, a) * M + L * Ma + Maa + 2.0 * Mab
    Gz = M / z + L * Mz + Maz + 2.0 * Mbz
    U = -R * G
    Ua = psi * R * G - R * Ga
    Uz = -R * Gz
    # cancellation between the log term and the derivative sums
    scale = abs(R) * (abs(L * M) + abs(Ma) + 2.0 * abs(Mb))
    err = err * scale / max(abs(U), 1e-300) + _EPS
    return U, Ua, Uz, err


def u_general_small(a: complex, b: complex, z: complex):
    """Jet of U(a, b, z) in (a, b, z) for non-integer b from two M series."""
    aj = Jet.linear(a, [1.0, 0.0, 0.0])
    bj = Jet.linear(b, [0.0, 1.0, 0.0])
    zj = Jet.linear(z, [0.0, 0.0, 1.0])
    m1, e1 = m_series_jet(a, b, z, 2)
    m2, e2 = m_series_jet(a - b + 1.0, 2.0 - b, z, 2)
    m2 = m2.compose([aj - bj + 1.0, 2.0 - bj, zj])
    c1 = jexp(jloggamma(1.0 - bj) - jloggamma(aj - bj + 1.0))
    c2 = jexp(jloggamma(bj - 1.0) - jloggamma(aj) + (1.0 - bj) * jlog(zj))
    t1, t2 = c1 * m1, c2 * m2
    u = t1 + t2
    err = (abs(t1.v) * e1 + abs(t2.v) * e2 + _EPS * (abs(t1.v) + abs(t2.v))) / max(abs(u.v), 1e-300)
    return u, err


def u_parts(a: complex, b: complex, z: complex):
    """(U, dU/da, dU/dz, err, regime) with automatic regime selection."""
    a, b, z = complex(a), complex(b), complex(z)
    if z == 0:
        raise DomainError("U(a, b, z) is singular at z = 0")
    r = abs(z)
    cands = []
    if _terminates(a, b) or r >= SERIES_MAX:
        jet, err = u_asymptotic_jet(a, b, z, order=1)
        if _terminates(a, b):
            err = 4 * _EPS
        cands.append((err, (jet.v, jet.g[0], jet.g[2]), Regime.ASYMPTOTIC))
    if r <= ASYMPTOTIC_MIN and not _terminates(a, b):
        try:
            if b == 1.0:
                U, Ua, Uz, err = u1_small(a, z)
                cands.append((err, (U, Ua, Uz), Regime.SERIES))
            elif b == 2.0:
                # U(a, 2, z) = -U'(a-1, 1, z) / (a-1); the a-derivative is not provided
                _, _, Uz, err = u1_small(a - 1.0, z)
                cands.append((err, (-Uz / (a - 1.0), math.nan, math.nan), Regime.SERIES))
            elif not _is_int(b):
                jet, err = u_general_small(a, b, z)
                cands.append((err, (jet.v, jet.g[0], jet.g[2]), Regime.SERIES))
            elif r < SERIES_MAX:
                raise DomainError("small-|z| U supported for b = 1, 2 or non-integer b")
        except NonConvergence:
            if r < SERIES_MAX:
                raise
    if not cands:
        raise NonConvergence("Kummer U: no representation met tolerance")
    err, vals, regime = min(cands, key=lambda c: c[0])
    return vals[0], vals[1], vals[2], err, regime


def kummer_U(a, b, z, da: int = 0) -> EvalResult:
    """Tricomi function U(a, b, z) and optionally dU/da.

    Parameters
    ----------
    a, b, z : complex
        ``z != 0``; the principal branch of ``arg z`` is used.
    da : int
        0 for U only, 1 to also return ``dU/da``.
    """
    if da not in (0, 1):
        raise ValueError("da must be 0 or 1")
    U, Ua, _, err, regime = u_parts(a, b, z)
    if da == 1:
        if math.isnan(complex(Ua).real):
            raise DomainError("dU/da not available for this b at small |z|")
        return EvalResult((U, Ua), err, regime)
    return EvalResult(U, err, regime)


# ----------------------------------------------------------------------- V
def kummer_V(a, b, z, form: str | int = "auto") -> EvalResult:
    """Companion solution V(a, b, z) = Gamma(a)[U - cos(pi a) Gamma(b-a)/Gamma(b) M].

    ``form=2`` evaluates the combination of two M series (non-integer b),
    ``form=1`` the definition through U and M; ``"auto"`` uses form 2 for
    moderate ``|z|`` and form 1 with the asymptotic U beyond it.
    """
    a, b, z = complex(a), complex(b), complex(z)
    if _is_int(b):
        raise PoleError("V(a, b, z) requires non-integer b")
    if form == "auto":
        form = 2 if abs(z) <= SERIES_MAX else 1
    if form == 2:
        m1, e1 = m_series_jet(a, b, z, 0)
        m2, e2 = m_series_jet(1.0 + a - b, 2.0 - b, z, 0)
        c1 = -cmath.cos(math.pi * b) * cmath.exp(loggamma(1.0 - b) + loggamma(b - a) - loggamma(1.0 - a))
        c2 = cmath.exp(loggamma(b - 1.0) + (1.0 - b) * cmath.log(z))
        t1, t2 = c1 * m1.v, c2 * m2.v
        v = t1 + t2
        err = (abs(t1) * e1 + abs(t2) * e2 + _EPS * (abs(t1) + abs(t2))) / max(abs(v), 1e-300)
        return EvalResult(v, err, Regime.SERIES)
    U, _, _, eu, ru = u_parts(a, b, z)
    mj, em, rm = m_jet(a, b, z, 0)
    ga = cmath.exp(loggamma(a))
    t2 = cmath.cos(math.pi * a) * cmath.exp(loggamma(b - a) - loggamma(b)) * mj.v
    v = ga * (U - t2)
    err = abs(ga) * (abs(U) * eu + abs(t2) * em) / max(abs(v), 1e-300) + _EPS
    regime = Regime.ASYMPTOTIC if Regime.ASYMPTOTIC in (ru, rm) else Regime.SERIES
    return EvalResult(v, err, regime)
