"""Legendre functions P_nu, Q_nu of real degree on the cut (-1, 1).

Three representations are used:

* ``|x| <= 1/2``: Gauss series in ``x^2`` for Q and in ``(1-x)/2`` for P;
* ``1/2 < x < 1``: the series in ``t = (1-x)/2`` with the logarithmic
  companion for Q;
* ``x < -1/2``: reflection ``x -> -x`` of the previous case.

Inside the guard band ``|1 - x^2| < 1e-6`` the local expansion about the
endpoint, truncated after the ``t^2`` term, is used.
Degree derivatives up to second order are carried as jets in nu.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, NonConvergence
from ._kernels import legendre_t_series
from .gamma import EULER_GAMMA, polygamma
from .hypergeometric import hyp2f1_sums, nu_jet
from .jets import Jet, jcos, jexp, jloggamma, jsin
from .types import EvalResult, Regime

GUARD = 1e-6
CENTRAL = 0.5
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class LegendreJets:
    """P, Q with nu-derivatives (value, d/dnu, d2/dnu2) and x-derivatives.

    ``dp_dx`` and ``dq_dx`` hold (d/dx, d2/dx dnu).
    """

    p: tuple
    q: tuple
    dp_dx: tuple
    dq_dx: tuple
    err: float
    regime: Regime


def _psi_jet(nu: float):
    return (polygamma(0, nu + 1.0).real, polygamma(1, nu + 1.0).real,
            polygamma(2, nu + 1.0).real)


def _near_one(nu: float, omx: float, opx: float, limit: bool):
    """Representation near x = +1 from the t-series (or its first two terms)."""
    t = 0.5 * omx
    if limit:
        # local expansion through t^2; the omitted terms are O(t^3)
        out, _ = legendre_t_series(nu, t, 3, 0.0)
        err = (nu * (nu + 1.0) + 2.0) ** 3 * t ** 3 + _EPS
    else:
        out, info = legendre_t_series(nu, t, 10000, 1e-17)
        if info[3] == 0.0:
            raise NonConvergence("Legendre t-series did not converge", int(info[0]), float(info[2]))
        err = _EPS * (1.0 + info[1] / max(abs(out[0, 0]), 1e-300)) + info[2]
    p = tuple(out[0])
    s = tuple(out[1])
    kp = tuple(out[2][:2])
    ks = tuple(out[3][:2])
    psi = _psi_jet(nu)
    lg = 0.5 * math.log(opx / omx) - EULER_GAMMA
    q = (p[0] * (lg - psi[0]) + s[0],
         p[1] * (lg - psi[0]) - p[0] * psi[1] + s[1],
         p[2] * (lg - psi[0]) - 2.0 * p[1] * psi[1] - p[0] * psi[2] + s[2])
    # d/dx = -(1/2) d/dt, and t d/dt is what the k-weighted sums give
    px = (-0.5 * kp[0] / t, -0.5 * kp[1] / t)
    sx = (-0.5 * ks[0] / t, -0.5 * ks[1] / t)
    w = 1.0 / (omx * opx)
    qx = (px[0] * (lg - psi[0]) + p[0] * w + sx[0],
          px[1] * (lg - psi[0]) - px[0] * psi[1] + p[1] * w + sx[1])
    return p, q, px, qx, err


def _jet1(tr) -> Jet:
    return Jet(tr[0], np.array([tr[1]], complex), np.array([[tr[2]]], complex))


def _reflect(nu: float, p, q, px, qx):
    """Values at -y from values at y (x-derivatives change sign)."""
    nv = Jet.linear(nu * math.pi, [math.pi])
    c, s = jcos(nv), jsin(nv)
    pj, qj = _jet1(p), _jet1(q)
    pr = c * pj - (2.0 / math.pi) * s * qj
    qr = -1.0 * (c * qj) - (0.5 * math.pi) * s * pj
    cv, c1 = c.v.real, c.g[0].real
    sv, s1 = s.v.real, s.g[0].real
    pxr = (-(cv * px[0] - (2.0 / math.pi) * sv * qx[0]),
           -(c1 * px[0] + cv * px[1] - (2.0 / math.pi) * (s1 * qx[0] + sv * qx[1])))
    qxr = (-(-cv * qx[0] - 0.5 * math.pi * sv * px[0]),
           -(-c1 * qx[0] - cv * qx[1] - 0.5 * math.pi * (s1 * px[0] + sv * px[1])))
    tri = lambda j: (j.v.real, j.g[0].real, j.h[0, 0].real)  # noqa: E731
    return tri(pr), tri(qr), pxr, qxr


def _central(nu: float, x: float, omx: float):
    """Hypergeometric representation for |x| <= 1/2."""
    t = 0.5 * omx
    sp, ep = hyp2f1_sums(-nu, nu + 1.0, 1.0, t)
    p = tuple(v.real for v in nu_jet(sp, -1.0, 1.0))
    kp = nu_jet(sp, -1.0, 1.0, offset=6)
    px = (-0.5 * kp[0].real / t, -0.5 * kp[1].real / t)

    x2 = x * x
    s1, e1 = hyp2f1_sums(-0.5 * nu, 0.5 * (1.0 + nu), 0.5, x2)
    s2, e2 = hyp2f1_sums(0.5 * (1.0 - nu), 1.0 + 0.5 * nu, 1.5, x2)
    f1 = _jet1(nu_jet(s1, -0.5, 0.5))
    f2 = _jet1(nu_jet(s2, -0.5, 0.5))
    k1 = nu_jet(s1, -0.5, 0.5, offset=6)
    k2 = nu_jet(s2, -0.5, 0.5, offset=6)

    half = Jet.linear(0.5 * nu, [0.5])
    lg_a = jloggamma(0.5 + half)
    lg_b = jloggamma(1.0 + half)
    hp = Jet.linear(0.5 * math.pi * nu, [0.5 * math.pi])
    g1 = -0.5 * jexp(lg_a - lg_b) * jsin(hp)
    g2 = jexp(lg_b - lg_a) * jcos(hp)
    sq = math.sqrt(math.pi)
    qj = sq * (g1 * f1 + x * (g2 * f2))
    q = (qj.v.real, qj.g[0].real, qj.h[0, 0].real)
    # d/dx F(x^2) = 2 x dF/dX = (2/x) sum k t_k
    if abs(x) > 1e-100:
        df1 = (2.0 * k1[0] / x, 2.0 * k1[1] / x)
        df2 = (2.0 * k2[0] / x, 2.0 * k2[1] / x)
    else:
        # leading term 2 x (a b / c) and its nu-derivative
        df1 = (-x * nu * (1.0 + nu), -x * (1.0 + 2.0 * nu))
        df2 = (x * (1.0 - nu) * (2.0 + nu) / 3.0, -x * (1.0 + 2.0 * nu) / 3.0)
    qx0 = sq * (g1.v * df1[0] + g2.v * (f2.v + x * df2[0]))
    qx1 = sq * (g1.g[0] * df1[0] + g1.v * df1[1]
                + g2.g[0] * (f2.v + x * df2[0]) + g2.v * (f2.g[0] + x * df2[1]))
    qx = (qx0.real, qx1.real)
    return p, q, px, qx, ep + e1 + e2


def legendre_jets(nu: float, x: float, omx: float | None = None,
                  opx: float | None = None) -> LegendreJets:
    """P_nu(x), Q_nu(x) with nu- and x-derivatives.

    ``omx = 1 - x`` and ``opx = 1 + x`` may be supplied when they are known
    more accurately than the difference in floating point (angles near 0 or pi).
    """
    if not (-1.0 <= x <= 1.0):
        raise DomainError(f"x={x} outside [-1, 1]")
    if nu <= -0.5:
        raise DomainError("legendre functions implemented for nu > -1/2")
    omx = 1.0 - x if omx is None else omx
    opx = 1.0 + x if opx is None else opx
    if omx <= 0.0 or opx <= 0.0:
        raise DomainError("Q_nu diverges at x = +-1")
    if abs(x) <= CENTRAL:
        p, q, px, qx, err = _central(nu, x, omx)
        return LegendreJets(p, q, px, qx, err, Regime.SERIES)
    limit = omx * opx < GUARD
    regime = Regime.LIMIT_FORM if limit else Regime.SERIES
    if x > 0.0:
        p, q, px, qx, err = _near_one(nu, omx, opx, limit)
        return LegendreJets(p, q, px, qx, err, regime)
    p, q, px, qx, err = _near_one(nu, opx, omx, limit)
    p, q, px, qx = _reflect(nu, p, q, px, qx)
    return LegendreJets(p, q, px, qx, err, regime)


def legendre_PQ(nu: float, x: float, d: int = 0):
    """Legendre functions of the first and second kind and a nu-derivative.

    Parameters
    ----------
    nu : float
        Degree, ``nu > -1/2``.
    x : float
        Argument in ``(-1, 1)``.
    d : int
        Order of the nu-derivative (0, 1 or 2).

    Returns
    -------
    (EvalResult, EvalResult)
        Results for P and Q; each value is ``f`` or ``(f, d^d f / dnu^d)``.
    """
    if d not in (0, 1, 2):
        raise ValueError("d must be 0, 1 or 2")
    j = legendre_jets(float(nu), float(x))
    if d == 0:
        return (EvalResult(j.p[0], j.err, j.regime), EvalResult(j.q[0], j.err, j.regime))
    return (EvalResult((j.p[0], j.p[d]), j.err, j.regime),
            EvalResult((j.q[0], j.q[d]), j.err, j.regime))
