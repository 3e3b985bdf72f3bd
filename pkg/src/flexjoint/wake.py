"""Reduction of an idealized alternating vortex wake to harmonic forcing.

The wake drives the joint with an approximately sinusoidal torque whose
frequency grows with flow speed (per unit vortex spacing) plus vorticity,
and whose amplitude grows with fluid density times vorticity squared. The
proportionality constants depend on the wake geometry and must be supplied
explicitly through a calibration; nothing is defaulted silently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hb import Forcing

__all__ = ["WakeParams", "WakeCalibration", "wake_to_forcing"]


@dataclass(frozen=True)
class WakeParams:
    flow_speed: float            # m/s
    vorticity: float             # 1/s, assumed equal for every vortex
    vortex_spacing: float        # m
    fluid_density: float         # kg/m^3
    phase_offset: float = 0.0    # rad

    def __post_init__(self):
        if self.flow_speed < 0 or self.vorticity < 0 or self.fluid_density < 0:
            raise ValueError("wake magnitudes must be non-negative")
        if not self.vortex_spacing > 0:
            raise ValueError(f"vortex_spacing must be positive, "
                             f"got {self.vortex_spacing}")


@dataclass(frozen=True)
class WakeCalibration:
    """User-supplied geometry factors: c_omega scales the frequency,
    c_amp maps density*vorticity^2 to specific torque (rad/s^2)."""

    c_omega: float
    c_amp: float

    def __post_init__(self):
        if not (self.c_omega > 0 and self.c_amp > 0):
            raise ValueError("calibration factors must be positive")


def wake_to_forcing(wake: WakeParams, calib: WakeCalibration) -> Forcing:
    """Map wake parameters to the harmonic forcing (Q0, Omega, phi).

    Omega = c_omega*(flow_speed/vortex_spacing + vorticity);
    Q0 = c_amp*fluid_density*vorticity^2. A zero Omega is rejected since
    the forcing must oscillate.
    """
    omega = calib.c_omega * (wake.flow_speed / wake.vortex_spacing
                             + wake.vorticity)
    if omega <= 0:
        raise ValueError("wake yields zero forcing frequency")
    q0 = calib.c_amp * wake.fluid_density * wake.vorticity**2
    return Forcing(Q0=q0, Omega=omega, phi=wake.phase_offset)
