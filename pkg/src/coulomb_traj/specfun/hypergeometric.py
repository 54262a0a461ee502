"""Gauss hypergeometric function with parameter derivatives."""
from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError, NonConvergence, PoleError
from ._kernels import hyp2f1_series
from .gamma import loggamma
from .jets import Jet, jexp, jloggamma
from .types import DerivOrder, EvalResult, Regime, as_order

MAX_TERMS = 10000
RTOL = 1e-17
_EPS = 2.220446049250313e-16

# slot of d^i/da^i d^j/db^j in the kernel layout
_SLOT = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (2, 0): 3, (1, 1): 4, (0, 2): 5}


def _is_nonpositive_int(c: complex) -> bool:
    return c.imag == 0.0 and c.real <= 0.0 and c.real == math.floor(c.real)


def hyp2f1_sums(a: complex, b: complex, c: complex, x: complex, order: int = 2):
    """Raw jet sums of the Gauss series (see ``_kernels.hyp2f1_series``).

    Returns ``(sums, rel_err)``.
    """
    a, b, c, x = complex(a), complex(b), complex(c), complex(x)
    if _is_nonpositive_int(c):
        raise PoleError(f"hyp2f1: c={c.real:g} is a non-positive integer")
    if abs(x) >= 1.0:
        raise DomainError("hyp2f1 series requires |x| < 1")
    sums, info = hyp2f1_series(a, b, c, x, order, MAX_TERMS, RTOL)
    if info[3] == 0.0:
        raise NonConvergence("hyp2f1 series did not converge", int(info[0]), float(info[2]))
    scale = max(abs(sums[0]), 1e-300)
    err = _EPS * (1.0 + info[1] / scale) + info[2] / scale
    return sums, err


def _gauss_jet(a: complex, b: complex, c: complex) -> Jet:
    av = Jet.linear(a, [1.0, 0.0])
    bv = Jet.linear(b, [0.0, 1.0])
    return jexp(loggamma(c) + jloggamma(c - av - bv) - jloggamma(c - av) - jloggamma(c - bv))


def hyp2f1(a, b, c, x, d: DerivOrder | tuple | None = None) -> EvalResult:
    """Gauss function 2F1(a, b; c; x) and optionally one mixed parameter derivative.

    Parameters
    ----------
    a, b, c, x : complex
        Parameters and argument; ``|x| < 1``, or ``x = 1`` with
        ``Re(c - a - b) > 0`` (Gauss summation).
    d : DerivOrder or (int, int), optional
        Orders of ``d/da`` and ``d/db``.

    Returns
    -------
    EvalResult
        ``value`` is F, or ``(F, d^i_a d^j_b F)`` when ``d`` is non-zero.
    """
    d = as_order(d)
    a, b, c, x = complex(a), complex(b), complex(c), complex(x)
    if _is_nonpositive_int(c):
        raise PoleError(f"hyp2f1: c={c.real:g} is a non-positive integer")
    if abs(x) > 1.0:
        raise DomainError("hyp2f1 requires |x| <= 1")
    if abs(x) == 1.0:
        if x != 1.0 or (c - a - b).real <= 0.0:
            raise DomainError("on |x| = 1 only x = 1 with Re(c-a-b) > 0 is supported")
        jet = _gauss_jet(a, b, c)
        hess = {(1, 0): jet.g[0], (0, 1): jet.g[1], (2, 0): jet.h[0, 0],
                (1, 1): jet.h[0, 1], (0, 2): jet.h[1, 1]}
        value = jet.v if d.total == 0 else (jet.v, hess[(d.wrt_a, d.wrt_b)])
        return EvalResult(value, 1e-14, Regime.LIMIT_FORM)
    sums, err = hyp2f1_sums(a, b, c, x, d.total)
    if d.total == 0:
        return EvalResult(sums[0], err, Regime.SERIES)
    return EvalResult((sums[0], sums[_SLOT[(d.wrt_a, d.wrt_b)]]), err, Regime.SERIES)


def nu_jet(sums: np.ndarray, da: float, db: float, offset: int = 0):
    """Directional value/first/second derivative along ``(a, b) = (da, db) * nu``."""
    s = sums[offset:offset + 6]
    return (s[0], da * s[1] + db * s[2],
            da * da * s[3] + 2.0 * da * db * s[4] + db * db * s[5])
