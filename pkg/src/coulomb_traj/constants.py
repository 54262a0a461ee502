"""Physical constants (CODATA 2018) and unit conversions.

Lengths are in picometres, energies in electronvolts, times in seconds.
"""
from __future__ import annotations

import math

ELECTRON_MASS_EV = 510998.95  # m c^2
HBAR_C_EV_PM = 197326.9804  # hbar c in eV pm
FINE_STRUCTURE = 7.2973525693e-3
HBAR_EV_S = 6.582119569e-16
SPEED_OF_LIGHT_PM_S = 299792458.0e12

# e^2 in Gaussian-style units, eV pm
E2_EV_PM = FINE_STRUCTURE * HBAR_C_EV_PM


def wavenumber(energy_ev: float) -> float:
    """k = sqrt(2 m E) / hbar in 1/pm."""
    return math.sqrt(2.0 * ELECTRON_MASS_EV * energy_ev) / HBAR_C_EV_PM


def sommerfeld(energy_ev: float, z: int) -> float:
    """eta_s = Z alpha sqrt(m c^2 / 2E); positive for an attractive centre."""
    return z * FINE_STRUCTURE * math.sqrt(ELECTRON_MASS_EV / (2.0 * energy_ev))


def time_unit(energy_ev: float) -> float:
    """hbar / 2E in seconds: converts the dimensionless time tau to t."""
    return HBAR_EV_S / (2.0 * energy_ev)
