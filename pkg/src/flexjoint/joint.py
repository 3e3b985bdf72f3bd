"""Physical model of a cable-driven rotational compliant joint.

The joint couples two bodies through a linear spring acting over a moment
arm; the spring pretension F is the control input that reshapes the
effective rotational stiffness. This module holds the exact torque law,
its odd-polynomial reduction, and the tension-tuning analyses built on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "JointParams",
    "DerivedGeometry",
    "TaylorSeries",
    "ValidityConfig",
    "ConvergenceError",
    "derive_geometry",
    "torque",
    "taylor_coeffs",
    "critical_tension",
    "optimal_linear_tension",
    "validity_angle",
    "golden_section_minimize",
]


class ConvergenceError(RuntimeError):
    """Raised when an iterative search exhausts its iteration budget."""


@dataclass(frozen=True)
class JointParams:
    """Physical description of the joint (strict SI units).

    r, d : moment-arm lengths (m), d > r by construction
    K    : stiffness of the linear spring (N/m)
    I    : moment of inertia around the rotation axis (kg m^2)
    zeta : specific damping (1/s)
    """

    r: float
    d: float
    K: float
    I: float
    zeta: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError(f"r must be positive, got {self.r}")
        if not self.d > self.r:
            raise ValueError(f"d must exceed r, got d={self.d}, r={self.r}")
        if not self.K > 0:
            raise ValueError(f"K must be positive, got {self.K}")
        if not self.I > 0:
            raise ValueError(f"I must be positive, got {self.I}")
        if self.zeta < 0:
            raise ValueError(f"zeta must be non-negative, got {self.zeta}")


@dataclass(frozen=True)
class DerivedGeometry:
    """Geometry shorthands: epsilon = d - r and S = r*d."""

    epsilon: float
    S: float


@dataclass(frozen=True)
class TaylorSeries:
    """Odd-power torque coefficients (c1, c3, c5, c7) at a given tension.

    Units are N*m/rad^n for the coefficient of theta^n; even coefficients
    vanish by the odd symmetry of the torque law.
    """

    tension: float
    coeffs: tuple[float, float, float, float]

    @property
    def c1(self) -> float:
        return self.coeffs[0]

    @property
    def c3(self) -> float:
        return self.coeffs[1]

    @property
    def c5(self) -> float:
        return self.coeffs[2]

    @property
    def c7(self) -> float:
        return self.coeffs[3]

    def evaluate(self, theta):
        """Polynomial torque c1*th + c3*th^3 + c5*th^5 + c7*th^7."""
        th = np.asarray(theta, dtype=float)
        c1, c3, c5, c7 = self.coeffs
        th2 = th * th
        out = th * (c1 + th2 * (c3 + th2 * (c5 + th2 * c7)))
        return float(out) if np.isscalar(theta) else out

    def cubic(self, theta):
        """Cubic truncation c1*th + c3*th^3 used by the reduced model."""
        th = np.asarray(theta, dtype=float)
        out = th * (self.coeffs[0] + self.coeffs[1] * th * th)
        return float(out) if np.isscalar(theta) else out


@dataclass(frozen=True)
class ValidityConfig:
    """Reference error for the cubic approximation: delta_tau = r*delta_F."""

    delta_F: float = 0.05

    def __post_init__(self):
        if not self.delta_F > 0:
            raise ValueError(f"delta_F must be positive, got {self.delta_F}")

    def delta_tau(self, joint: JointParams) -> float:
        return joint.r * self.delta_F


def derive_geometry(joint: JointParams) -> DerivedGeometry:
    """Compute epsilon = d - r and S = r*d (both positive by invariants)."""
    return DerivedGeometry(epsilon=joint.d - joint.r, S=joint.r * joint.d)


def torque(theta, F: float, joint: JointParams):
    """Exact restoring torque of the joint at deflection theta and tension F.

    The spring elongation is sqrt(eps^2 + 4*S*sin^2(theta/2)) - eps; the
    spring force K*elongation + F acts over the moment arm S*sin(theta)/L.
    Odd in theta and affine in F with zero offset at theta = 0.

    theta may be a scalar or an ndarray.
    """
    if F < 0:
        raise ValueError(f"tension must be non-negative, got {F}")
    geom = derive_geometry(joint)
    th = np.asarray(theta, dtype=float)
    s = np.sin(0.5 * th)
    length = np.sqrt(geom.epsilon**2 + 4.0 * geom.S * s * s)
    tau = (joint.K * (length - geom.epsilon) + F) / length * geom.S * np.sin(th)
    return float(tau) if np.isscalar(theta) else tau


def _closed_form_c1_c3(F: float, geom: DerivedGeometry, K: float):
    c1 = geom.S * F / geom.epsilon
    c3 = c1 * (geom.S / (2.0 * geom.epsilon**2) * (geom.epsilon * K / F - 1.0) - 1.0 / 6.0)
    return c1, c3


def taylor_coeffs(F: float, joint: JointParams, theta_ref: float = 0.5) -> TaylorSeries:
    """Odd-polynomial reduction of the torque law at tension F.

    c1 and c3 come from the closed-form Taylor expressions. c5 and c7 are
    the least-squares fit of the residual torque - c1*th - c3*th^3 against
    (th^5, th^7) at 64 Chebyshev nodes on [-theta_ref, theta_ref]; fitting
    all four coefficients at once would pollute c1, c3 with truncation
    leakage and break the closed-form validation.
    """
    if F <= 0:
        raise ValueError(f"tension must be positive, got {F}")
    if theta_ref <= 0:
        raise ValueError(f"theta_ref must be positive, got {theta_ref}")
    geom = derive_geometry(joint)
    c1, c3 = _closed_form_c1_c3(F, geom, joint.K)

    n = 64
    nodes = theta_ref * np.cos((2.0 * np.arange(1, n + 1) - 1.0) * np.pi / (2.0 * n))
    resid = torque(nodes, F, joint) - c1 * nodes - c3 * nodes**3
    basis = np.stack([nodes**5, nodes**7], axis=1)
    (c5, c7), *_ = np.linalg.lstsq(basis, resid, rcond=None)
    return TaylorSeries(tension=F, coeffs=(c1, c3, float(c5), float(c7)))


def critical_tension(joint: JointParams) -> float:
    """Tension F* at which the cubic torque coefficient vanishes.

    F* = eps*K / (eps^2/(3*S) + 1); below F* the joint hardens (c3 > 0),
    above it softens (c3 < 0).
    """
    geom = derive_geometry(joint)
    return geom.epsilon * joint.K / (geom.epsilon**2 / (3.0 * geom.S) + 1.0)


def golden_section_minimize(f, lo: float, hi: float, tol: float,
                            max_iter: int = 200, trace: list | None = None) -> float:
    """Golden-section search for the minimizer of a unimodal f on [lo, hi].

    Shrinks the bracket by the golden ratio each iteration; raises
    ConvergenceError if the bracket does not reach tol within max_iter.
    When given, trace collects the (lo, hi) bracket after each iteration.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a < tol:
            return 0.5 * (a + b)
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
        if trace is not None:
            trace.append((a, b))
    raise ConvergenceError(
        f"golden-section bracket [{a}, {b}] did not reach width {tol} "
        f"after {max_iter} iterations")


def optimal_linear_tension(joint: JointParams, theta_ref: float = 0.5,
                           n_samples: int = 2001) -> float:
    """Tension F0 minimizing the joint's deviation from a linear spring.

    The objective is the max-norm distance between the exact torque curve
    on [-theta_ref, theta_ref] and its best-fit line through the origin,
    minimized over F in [0.5*F*, 1.5*F*] by golden-section search to a
    bracket width of 1e-4*F*.
    """
    if theta_ref <= 0:
        raise ValueError(f"theta_ref must be positive, got {theta_ref}")
    fstar = critical_tension(joint)
    thetas = np.linspace(-theta_ref, theta_ref, n_samples)
    th_dot = float(np.dot(thetas, thetas))

    def deviation(F):
        tau = torque(thetas, F, joint)
        slope = float(np.dot(tau, thetas)) / th_dot
        return float(np.max(np.abs(tau - slope * thetas)))

    return golden_section_minimize(deviation, 0.5 * fstar, 1.5 * fstar,
                                   tol=1e-4 * fstar)


#: Sentinel returned by validity_angle when the cubic model stays within the
#: reference error everywhere below pi/2.
VALID_BEYOND_PI_2 = math.inf


def validity_angle(F: float, joint: JointParams,
                   cfg: ValidityConfig = ValidityConfig()) -> float:
    """Smallest deflection where the cubic model error reaches delta_tau.

    Scans theta upward in 0.01 rad steps for a sign change of
    |exact - cubic| - delta_tau, then bisects to 1e-8 rad. Returns the
    VALID_BEYOND_PI_2 sentinel (math.inf) if no crossing occurs below pi/2.
    """
    if F <= 0:
        raise ValueError(f"tension must be positive, got {F}")
    geom = derive_geometry(joint)
    c1, c3 = _closed_form_c1_c3(F, geom, joint.K)
    dtau = cfg.delta_tau(joint)

    def excess(th):
        return abs(torque(th, F, joint) - (c1 * th + c3 * th**3)) - dtau

    step = 0.01
    th = 0.0
    cap = 0.5 * math.pi
    while th < cap:
        th_next = min(th + step, cap)
        if excess(th_next) > 0.0:
            lo, hi = th, th_next
            while hi - lo > 1e-8:
                mid = 0.5 * (lo + hi)
                if excess(mid) > 0.0:
                    hi = mid
                else:
                    lo = mid
            return 0.5 * (lo + hi)
        th = th_next
    return VALID_BEYOND_PI_2
