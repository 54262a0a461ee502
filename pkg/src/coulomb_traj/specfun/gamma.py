"""Log-gamma and polygamma functions of complex argument.

All routines shift the argument upward with the recurrence until the
Stirling / asymptotic series is accurate to double precision.
"""
from __future__ import annotations

import cmath
import math

from ..errors import PoleError

EULER_GAMMA = 0.57721566490153286061

# B_{2k} for k = 1..12
_BERNOULLI = (
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6,
    -3617.0 / 510, 43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730,
)
_SHIFT = 12.0
_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _check_pole(z: complex) -> None:
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise PoleError(f"Gamma pole at z={z.real:g}")


def _shift(z: complex):
    n = 0
    if z.real < _SHIFT:
        n = int(math.ceil(_SHIFT - z.real))
    return n


def loggamma(z: complex) -> complex:
    """Principal branch of log Gamma(z), analytic off the negative real axis."""
    z = complex(z)
    _check_pole(z)
    n = _shift(z)
    corr = 0j
    for k in range(n):
        corr += cmath.log(z + k)
    w = z + n
    s = (w - 0.5) * cmath.log(w) - w + _LN_SQRT_2PI
    inv = 1.0 / w
    inv2 = inv * inv
    p = inv
    for k, b in enumerate(_BERNOULLI, start=1):
        term = b / (2 * k * (2 * k - 1)) * p
        s += term
        if abs(term) < 1e-17 * abs(s):
            break
        p *= inv2
    return s - corr


def gamma(z: complex) -> complex:
    """Gamma(z) for complex z."""
    return cmath.exp(loggamma(z))


def rgamma(z: complex) -> complex:
    """1/Gamma(z); zero at the poles of Gamma."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        return 0j
    return cmath.exp(-loggamma(z))


def polygamma(m: int, z: complex) -> complex:
    """psi^(m)(z) for m = 0, 1, 2."""
    if m not in (0, 1, 2):
        raise ValueError("polygamma order must be 0, 1 or 2")
    z = complex(z)
    _check_pole(z)
    n = _shift(z)
    corr = 0j
    for k in range(n):
        corr += 1.0 / (z + k) ** (m + 1)
    w = z + n
    inv = 1.0 / w
    inv2 = inv * inv
    if m == 0:
        s = cmath.log(w) - 0.5 * inv
        p = inv2
        for k, b in enumerate(_BERNOULLI, start=1):
            term = -b / (2 * k) * p
            s += term
            if abs(term) < 1e-17 * abs(s):
                break
            p *= inv2
        return s - corr
    if m == 1:
        s = inv + 0.5 * inv2
        p = inv2 * inv
        for b in _BERNOULLI:
            term = b * p
            s += term
            if abs(term) < 1e-17 * abs(s):
                break
            p *= inv2
        return s + corr
    s = -inv2 - inv2 * inv
    p = inv2 * inv2
    for k, b in enumerate(_BERNOULLI, start=1):
        term = -(2 * k + 1) * b * p
        s += term
        if abs(term) < 1e-17 * abs(s):
            break
        p *= inv2
    return s - 2.0 * corr


def digamma(z: complex) -> complex:
    return polygamma(0, z)


def trigamma(z: complex) -> complex:
    return polygamma(1, z)
