"""Second-order multivariate Taylor jets over complex numbers.

A jet carries a value, its gradient and its Hessian with respect to a fixed
list of variables. Arithmetic follows the chain rule, which keeps the many
parameter derivatives of the wave functions mechanical.
"""
from __future__ import annotations

import cmath

import numpy as np

from .gamma import loggamma, polygamma


class Jet:
    __slots__ = ("v", "g", "h")

    def __init__(self, v, g, h):
        self.v = complex(v)
        self.g = g
        self.h = h

    @property
    def n(self) -> int:
        return self.g.shape[0]

    @classmethod
    def const(cls, c, n: int) -> "Jet":
        return cls(c, np.zeros(n, complex), np.zeros((n, n), complex))

    @classmethod
    def linear(cls, c, grad) -> "Jet":
        g = np.asarray(grad, complex)
        return cls(c, g, np.zeros((g.shape[0], g.shape[0]), complex))

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.const(other, self.n)

    def __add__(self, other):
        o = self._lift(other)
        return Jet(self.v + o.v, self.g + o.g, self.h + o.h)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.v, -self.g, -self.h)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            c = complex(other)
            return Jet(self.v * c, self.g * c, self.h * c)
        gg = np.outer(self.g, other.g)
        return Jet(
            self.v * other.v,
            self.g * other.v + other.g * self.v,
            self.h * other.v + other.h * self.v + gg + gg.T,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self * (1.0 / complex(other))
        return self * other.reciprocal()

    def apply(self, f0, f1, f2) -> "Jet":
        """Compose with a scalar function whose derivatives at ``v`` are f0, f1, f2."""
        return Jet(f0, f1 * self.g, f2 * np.outer(self.g, self.g) + f1 * self.h)

    def reciprocal(self) -> "Jet":
        r = 1.0 / self.v
        return self.apply(r, -r * r, 2.0 * r * r * r)

    def compose(self, inner: list["Jet"]) -> "Jet":
        """Treat ``self`` as a function of ``len(inner)`` variables given by ``inner``."""
        jac = np.array([j.g for j in inner])
        g = self.g @ jac
        h = jac.T @ self.h @ jac
        for gi, j in zip(self.g, inner):
            if gi != 0:
                h = h + gi * j.h
        return Jet(self.v, g, h)


def jexp(j: Jet) -> Jet:
    e = cmath.exp(j.v)
    return j.apply(e, e, e)


def jlog(j: Jet) -> Jet:
    r = 1.0 / j.v
    return j.apply(cmath.log(j.v), r, -r * r)


def jloggamma(j: Jet) -> Jet:
    return j.apply(loggamma(j.v), polygamma(0, j.v), polygamma(1, j.v))


def jcos(j: Jet) -> Jet:
    c, s = cmath.cos(j.v), cmath.sin(j.v)
    return j.apply(c, -s, -c)


def jsin(j: Jet) -> Jet:
    c, s = cmath.cos(j.v), cmath.sin(j.v)
    return j.apply(s, c, -s)
