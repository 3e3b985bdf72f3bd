"""Harmonic-balance amplitudes of the reduced cubic oscillator.

A single-harmonic periodic ansatz theta = A*sin(Omega*t + psi) turns the
equation of motion th'' + zeta*th' + k*th + a*th^3 = Q0*sin(Omega*t) into
a cubic equation for the squared amplitude u = A^2:

    (9*a^2/16) u^3 + (3*(k - Omega^2)*a/2) u^2
        + ((Omega^2 + zeta^2 - 2k)*Omega^2 + k^2) u - Q0^2 = 0

which is equivalently ((k - Omega^2 + 3/4*a*u)^2 + zeta^2*Omega^2) u = Q0^2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .joint import JointParams, golden_section_minimize, taylor_coeffs

__all__ = [
    "DuffingCoeffs",
    "Forcing",
    "AmplitudeRoot",
    "AmplitudeSurface",
    "MaximaLine",
    "duffing_coeffs",
    "amplitude_polynomial",
    "cubic_real_roots",
    "solve_amplitudes",
    "largest_stable_amplitude",
    "response_surface",
    "line_of_maxima",
]


@dataclass(frozen=True)
class DuffingCoeffs:
    """Specific oscillator coefficients: stiffness k (1/s^2), cubic a
    (1/(s^2 rad^2), either sign), damping zeta (1/s)."""

    k: float
    a: float
    zeta: float

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"k must be positive, got {self.k}")
        if self.zeta < 0:
            raise ValueError(f"zeta must be non-negative, got {self.zeta}")


@dataclass(frozen=True)
class Forcing:
    """Harmonic drive Q0*sin(Omega*t + phi) in specific-torque units."""

    Q0: float
    Omega: float
    phi: float = 0.0

    def __post_init__(self):
        if self.Q0 < 0:
            raise ValueError(f"Q0 must be non-negative, got {self.Q0}")
        if not self.Omega > 0:
            raise ValueError(f"Omega must be positive, got {self.Omega}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.Omega


@dataclass(frozen=True)
class AmplitudeRoot:
    """One periodic-response amplitude with its stability flag."""

    amplitude: float
    stable: bool


def duffing_coeffs(F: float, joint: JointParams) -> DuffingCoeffs:
    """Reduce the joint at tension F to specific coefficients k = c1/I,
    a = c3/I, zeta carried over from the joint."""
    ts = taylor_coeffs(F, joint)
    return DuffingCoeffs(k=ts.c1 / joint.I, a=ts.c3 / joint.I, zeta=joint.zeta)


def amplitude_polynomial(coeffs: DuffingCoeffs, forcing: Forcing):
    """Coefficients (p3, p2, p1, p0) of the cubic in u = A^2."""
    k, a, z = coeffs.k, coeffs.a, coeffs.zeta
    om2 = forcing.Omega**2
    p3 = 9.0 * a * a / 16.0
    p2 = 1.5 * (k - om2) * a
    p1 = (om2 + z * z - 2.0 * k) * om2 + k * k
    p0 = -forcing.Q0**2
    return p3, p2, p1, p0


def cubic_real_roots(p3: float, p2: float, p1: float, p0: float) -> list[float]:
    """Real roots of p3 x^3 + p2 x^2 + p1 x + p0 via the depressed-cubic
    closed form in complex arithmetic.

    Complex roots with |imag| < 1e-9*(1 + |real|) are snapped to real.
    Degenerate leading coefficients fall back to the quadratic / linear
    cases.
    """
    if p3 == 0.0:
        if p2 == 0.0:
            if p1 == 0.0:
                return []
            return [-p0 / p1]
        disc = p1 * p1 - 4.0 * p2 * p0
        if disc < 0.0:
            return []
        s = math.sqrt(disc)
        return sorted([(-p1 - s) / (2.0 * p2), (-p1 + s) / (2.0 * p2)])

    b, c, d = p2 / p3, p1 / p3, p0 / p3
    # depressed form t^3 + p t + q with x = t - b/3
    p = c - b * b / 3.0
    q = 2.0 * b**3 / 27.0 - b * c / 3.0 + d
    shift = -b / 3.0
    disc = cmath.sqrt((q / 2.0) ** 2 + (p / 3.0) ** 3)
    u3 = -q / 2.0 + disc
    if abs(u3) < 1e-300:
        u3 = -q / 2.0 - disc
    u = u3 ** (1.0 / 3.0)
    omega = complex(-0.5, 0.5 * math.sqrt(3.0))
    roots = []
    for m in range(3):
        w = u * omega**m
        t = w - p / (3.0 * w) if w != 0 else 0.0
        x = t + shift
        if abs(x.imag) < 1e-9 * (1.0 + abs(x.real)):
            roots.append(x.real)
    return sorted(roots)


def _polish_root(u: float, p3: float, p2: float, p1: float, p0: float) -> float:
    # one or two Newton steps to tighten the closed-form root
    for _ in range(2):
        P = ((p3 * u + p2) * u + p1) * u + p0
        dP = (3.0 * p3 * u + 2.0 * p2) * u + p1
        if dP == 0.0:
            break
        u = u - P / dP
    return u


def solve_amplitudes(coeffs: DuffingCoeffs, forcing: Forcing) -> list[AmplitudeRoot]:
    """All non-negative periodic-response amplitudes, sorted ascending.

    A root u of the amplitude cubic is stable iff dP/du > 0 there (the
    middle branch between the two folds has dP/du < 0 and is the unstable
    one). For Q0 > 0 at least one positive root exists since P(0) < 0.
    """
    p3, p2, p1, p0 = amplitude_polynomial(coeffs, forcing)
    # p1 = (k - Omega^2)^2 + zeta^2*Omega^2 > 0 identically; its linear root
    # sets the amplitude scale. When the cubic/quadratic terms are below
    # numerical noise at that scale, the closed-form cubic is hopelessly
    # ill-conditioned, so fall back to the linear branch.
    u_lin = -p0 / p1
    if p3 * u_lin * u_lin + abs(p2) * u_lin <= 1e-12 * p1:
        candidates = [u_lin]
    else:
        candidates = cubic_real_roots(p3, p2, p1, p0)
    roots = []
    for u in candidates:
        if u < 0.0:
            continue
        u = _polish_root(u, p3, p2, p1, p0)
        if u < 0.0:
            continue
        dP = (3.0 * p3 * u + 2.0 * p2) * u + p1
        roots.append(AmplitudeRoot(amplitude=math.sqrt(u), stable=dP > 0.0))
    if forcing.Q0 > 0.0 and not roots:
        raise AssertionError("amplitude cubic lost its positive root")
    return sorted(roots, key=lambda r: r.amplitude)


def largest_stable_amplitude(coeffs: DuffingCoeffs, forcing: Forcing) -> float:
    """Largest stable amplitude; 0.0 for an unforced oscillator."""
    if forcing.Q0 == 0.0:
        return 0.0
    stable = [r.amplitude for r in solve_amplitudes(coeffs, forcing) if r.stable]
    if not stable:
        raise AssertionError("no stable amplitude root found")
    return max(stable)


@dataclass(frozen=True)
class AmplitudeSurface:
    """Stable-amplitude sweep over the (F, Omega) plane.

    amplitudes[i, j] is the largest stable amplitude at (F_grid[i],
    Omega_grid[j]); multiplicity[i, j] counts the real roots there.
    """

    F_grid: np.ndarray
    Omega_grid: np.ndarray
    amplitudes: np.ndarray
    multiplicity: np.ndarray
    Q0: float
    linear_surrogate: bool = False


def _coeffs_at(F: float, joint: JointParams, linear_surrogate: bool) -> DuffingCoeffs:
    c = duffing_coeffs(F, joint)
    if linear_surrogate:
        c = DuffingCoeffs(k=c.k, a=0.0, zeta=c.zeta)
    return c


def response_surface(joint: JointParams, Q0: float,
                     F_range: tuple[float, float],
                     Omega_range: tuple[float, float],
                     resolution: tuple[int, int] = (200, 200),
                     linear_surrogate: bool = False) -> AmplitudeSurface:
    """Sweep the largest stable amplitude over an (F, Omega) grid.

    With linear_surrogate the cubic coefficient is forced to zero for
    every tension, leaving the plain linear resonance surface.
    """
    if F_range[0] <= 0 or F_range[1] <= F_range[0]:
        raise ValueError(f"invalid tension range {F_range}")
    if Omega_range[0] <= 0 or Omega_range[1] <= Omega_range[0]:
        raise ValueError(f"invalid frequency range {Omega_range}")
    nF, nW = resolution
    if nF < 2 or nW < 2:
        raise ValueError(f"grid must be at least 2x2, got {resolution}")
    F_grid = np.linspace(F_range[0], F_range[1], nF)
    W_grid = np.linspace(Omega_range[0], Omega_range[1], nW)
    amps = np.empty((nF, nW))
    mult = np.empty((nF, nW), dtype=int)
    for i, F in enumerate(F_grid):
        coeffs = _coeffs_at(float(F), joint, linear_surrogate)
        for j, W in enumerate(W_grid):
            forcing = Forcing(Q0=Q0, Omega=float(W))
            roots = solve_amplitudes(coeffs, forcing)
            amps[i, j] = max(r.amplitude for r in roots if r.stable)
            mult[i, j] = len(roots)
    return AmplitudeSurface(F_grid=F_grid, Omega_grid=W_grid, amplitudes=amps,
                            multiplicity=mult, Q0=Q0,
                            linear_surrogate=linear_surrogate)


@dataclass(frozen=True)
class MaximaLine:
    """Tension of maximum response per forcing frequency."""

    Omega: np.ndarray
    F_max: np.ndarray
    amplitude: np.ndarray
    degenerate: np.ndarray  # True where the grid row was flat


def line_of_maxima(surface: AmplitudeSurface, joint: JointParams) -> MaximaLine:
    """Refine argmax_F of the stable amplitude for each grid frequency.

    The grid argmax is sharpened by golden-section search between its
    neighboring grid points down to 1e-4 N. Flat rows are flagged and
    report the leftmost maximizer.
    """
    nW = surface.Omega_grid.size
    F_max = np.empty(nW)
    amp = np.empty(nW)
    degen = np.zeros(nW, dtype=bool)
    for j in range(nW):
        W = float(surface.Omega_grid[j])
        col = surface.amplitudes[:, j]
        if np.all(col == col[0]):
            degen[j] = True
            F_max[j] = surface.F_grid[0]
            amp[j] = col[0]
            continue
        i = int(np.argmax(col))
        lo = surface.F_grid[max(i - 1, 0)]
        hi = surface.F_grid[min(i + 1, surface.F_grid.size - 1)]
        forcing = Forcing(Q0=surface.Q0, Omega=W)

        def neg_amp(F):
            coeffs = _coeffs_at(F, joint, surface.linear_surrogate)
            return -largest_stable_amplitude(coeffs, forcing)

        if hi - lo < 1e-4:
            F_max[j] = surface.F_grid[i]
        else:
            F_max[j] = golden_section_minimize(neg_amp, float(lo), float(hi), tol=1e-4)
        amp[j] = -neg_amp(float(F_max[j]))
    return MaximaLine(Omega=surface.Omega_grid.copy(), F_max=F_max,
                      amplitude=amp, degenerate=degen)
