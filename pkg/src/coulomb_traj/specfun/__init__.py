"""Special functions: log-gamma, polygamma, Gauss 2F1, Legendre P/Q, Kummer M/U/V."""
from __future__ import annotations

from .gamma import EULER_GAMMA, gamma, loggamma, polygamma, rgamma
from .hypergeometric import hyp2f1
from .kummer import kummer_M, kummer_U, kummer_V
from .legendre import legendre_PQ
from .types import DerivOrder, EvalResult, Regime

_EPS = 2.220446049250313e-16


def ln_gamma(z) -> EvalResult:
    """Principal-branch log Gamma(z) as an EvalResult."""
    v = loggamma(z)
    return EvalResult(v, _EPS * (1.0 + abs(v)), Regime.ASYMPTOTIC)


def digamma(z, order: int = 0) -> EvalResult:
    """psi(z) (order 0) or psi'(z) (order 1) as an EvalResult."""
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    v = polygamma(order, z)
    return EvalResult(v, 8 * _EPS * (1.0 + abs(v)), Regime.ASYMPTOTIC)


__all__ = [
    "DerivOrder", "EULER_GAMMA", "EvalResult", "Regime", "digamma", "gamma", "hyp2f1",
    "kummer_M", "kummer_U", "kummer_V", "legendre_PQ", "ln_gamma", "loggamma", "polygamma",
    "rgamma",
]
