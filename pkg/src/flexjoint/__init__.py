"""Frequency-domain analysis toolkit for a tension-tuned compliant joint.

The joint reduces to a cubic (Duffing-type) oscillator whose periodic
response is predicted by three independent routes: harmonic balance,
truncated Volterra series, and direct time-domain simulation.
"""

__version__ = "0.1.0"

from .config import ConfigError, JointConfig, load_config, parse_config
from .hb import (AmplitudeRoot, AmplitudeSurface, DuffingCoeffs, Forcing,
                 MaximaLine, amplitude_polynomial, duffing_coeffs,
                 largest_stable_amplitude, line_of_maxima, response_surface,
                 solve_amplitudes)
from .joint import (ConvergenceError, DerivedGeometry, JointParams,
                    TaylorSeries, ValidityConfig, critical_tension,
                    derive_geometry, optimal_linear_tension, taylor_coeffs,
                    torque, validity_angle)
from .signals import SampledSignal, analytic_envelope, harmonic_amplitudes
from .simulate import (IntegrationError, NotSteadyError, SimConfig,
                       Trajectory, simulate, steady_state_amplitude)
from .volterra import (KernelContext, OutputSpectrum, ResonanceSingularityError,
                       SpectrumLine, h1, kernel, multi_tone_spectrum,
                       sine_input_lines, single_tone_response,
                       single_tone_terms)
from .wake import WakeCalibration, WakeParams, wake_to_forcing

__all__ = [name for name in dir() if not name.startswith("_")]
