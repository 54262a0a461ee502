"""Result containers shared by the special-function routines."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any


class Regime(str, enum.Enum):
    """Which representation produced a value."""

    SERIES = "Series"
    ASYMPTOTIC = "Asymptotic"
    REFLECTION = "Reflection"
    LIMIT_FORM = "LimitForm"


@dataclass(frozen=True)
class EvalResult:
    """A value together with its error estimate and the regime used.

    ``value`` is a complex scalar, or a tuple ``(f, derivative)`` when a
    parameter derivative was requested.
    """

    value: Any
    err_estimate: float
    regime: Regime


@dataclass(frozen=True)
class DerivOrder:
    """Order of differentiation with respect to the first two parameters."""

    wrt_a: int = 0
    wrt_b: int = 0

    def __post_init__(self):
        if self.wrt_a < 0 or self.wrt_b < 0 or self.wrt_a + self.wrt_b > 2:
            raise ValueError("derivative order must be non-negative with total order <= 2")

    @property
    def total(self) -> int:
        return self.wrt_a + self.wrt_b


def as_order(d) -> DerivOrder:
    """Accept a DerivOrder, a ``(wrt_a, wrt_b)`` tuple or None."""
    if d is None:
        return DerivOrder()
    if isinstance(d, DerivOrder):
        return d
    return DerivOrder(*d)
