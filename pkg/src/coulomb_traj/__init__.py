"""Mode trajectories of Coulomb scattering compared with classical orbits."""
from __future__ import annotations

from .classical import (Branch, ClassicalOrbitParams, Coordinates, Scenario, TrajectoryPoint,
                        classical_time, polar_orbit_theta, returning_point, rutherford_cross_section,
                        scattering_angle_classical, temple_orbit_r, turning_radii)
from .mode_polar import (CrossSectionSample, ModeAngle, ModeParams, RadialWave, cross_section_mode,
                         dt_drho_scan, limiting_angle, radial_wave, returning_theta,
                         scattering_angle_mode, trajectory_polar, w_r, w_theta)
from .mode_temple import (GapReport, TempleWave, temple_cross_section, temple_time,
                          temple_trajectory, temple_wave)

__version__ = "0.1.0"
