"""Time-domain integration of the forced joint.

The state (theta, theta_dot) evolves under

    theta'' = -zeta*theta' - tau(theta, F)/I + Q0*sin(Omega*t + phi)

with tau either the exact torque law or its cubic truncation. Integration
uses an in-repo Dormand-Prince 5(4) embedded Runge-Kutta pair with PI
step-size control; trajectories are resampled on a uniform grid through
cubic Hermite interpolation of the accepted steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .hb import Forcing
from .joint import JointParams, taylor_coeffs, torque
from .signals import SampledSignal, analytic_envelope, interior_slice

__all__ = [
    "SimConfig",
    "Trajectory",
    "IntegrationError",
    "NotSteadyError",
    "simulate",
    "steady_state_amplitude",
]


class IntegrationError(RuntimeError):
    """Integration failed (step-size underflow or non-finite state)."""


class NotSteadyError(RuntimeError):
    """Envelope spread too large; response not settled into a steady tone."""


@dataclass(frozen=True)
class SimConfig:
    """Integration settings.

    t_end / transient_cut default to transient_cut + 15 forcing periods
    and max(10/zeta, 20 forcing periods) respectively when left as None.
    """

    abs_tol: float = 1e-6
    rel_tol: float = 1e-6
    t_end: float | None = None
    transient_cut: float | None = None
    max_step: float = math.inf
    model: str = "exact"
    samples_per_period: int = 64

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.model not in ("exact", "cubic"):
            raise ValueError(f"model must be 'exact' or 'cubic', got {self.model!r}")
        if self.samples_per_period < 64:
            raise ValueError("need at least 64 samples per forcing period")
        if self.t_end is not None and self.transient_cut is not None:
            if not 0 <= self.transient_cut < self.t_end:
                raise ValueError("require 0 <= transient_cut < t_end")

    def resolved(self, forcing: Forcing, zeta: float) -> "SimConfig":
        period = forcing.period
        cut = self.transient_cut
        if cut is None:
            cut = max(10.0 / zeta if zeta > 0 else 0.0, 20.0 * period)
        t_end = self.t_end
        if t_end is None:
            t_end = cut + 15.0 * period
        if not 0 <= cut < t_end:
            raise ValueError("require 0 <= transient_cut < t_end")
        # keep accepted steps no longer than the resample interval so the
        # cubic Hermite resampling stays well below the integration error
        max_step = min(self.max_step, period / self.samples_per_period)
        return replace(self, t_end=t_end, transient_cut=cut,
                       max_step=max_step)


@dataclass(frozen=True)
class Trajectory:
    """Uniformly resampled solution of the equation of motion."""

    times: np.ndarray
    theta: np.ndarray
    theta_dot: np.ndarray
    forcing: Forcing
    model: str
    transient_cut: float

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])


# Dormand-Prince 5(4) tableau
_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0)
_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0),
    (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
     11.0 / 84.0),
)
# 5th-order weights equal the last A row; error weights are b5 - b4
_E = (71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
      -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


def _integrate(rhs, t0: float, t_end: float, y0, cfg: SimConfig):
    """Adaptive DP54 with PI step control; returns step nodes with slopes."""
    atol, rtol = cfg.abs_tol, cfg.rel_tol
    t = t0
    y = np.asarray(y0, dtype=float)
    f = rhs(t, y)
    # initial step guess from the first derivative scale
    scale = atol + rtol * np.abs(y)
    d0 = math.sqrt(float(np.mean((y / scale) ** 2)))
    d1 = math.sqrt(float(np.mean((f / scale) ** 2)))
    h = 0.01 * d0 / d1 if d0 > 1e-5 and d1 > 1e-5 else 1e-4
    h = min(h, cfg.max_step, t_end - t0)

    nodes = [(t, y.copy(), f.copy())]
    err_prev = 1.0
    min_step = 1e-14 * max(abs(t_end), 1.0)
    k = [None] * 7
    while t < t_end:
        h = min(h, t_end - t)
        if h < min_step:
            raise IntegrationError(f"step size underflow at t = {t}")
        k[0] = f
        for i in range(1, 7):
            yi = y + h * sum(a * k[m] for m, a in enumerate(_A[i]))
            k[i] = rhs(t + _C[i] * h, yi)
        y_new = y + h * sum(a * k[m] for m, a in enumerate(_A[6]))
        err_vec = h * sum(e * k[m] for m, e in enumerate(_E))
        if not np.all(np.isfinite(y_new)):
            raise IntegrationError(f"non-finite state at t = {t + h}")
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = math.sqrt(float(np.mean((err_vec / scale) ** 2)))
        if err <= 1.0:
            t += h
            y = y_new
            f = k[6]  # FSAL
            nodes.append((t, y.copy(), f.copy()))
            fac = 0.9 * (err + 1e-16) ** -0.14 * err_prev ** 0.08
            err_prev = err + 1e-16
        else:
            fac = max(0.2, 0.9 * err ** -0.2)
        h = min(h * min(5.0, max(0.2, fac)), cfg.max_step)
    return nodes


def _hermite_resample(nodes, t_grid):
    """Cubic Hermite interpolation of (t, y, f) step nodes onto t_grid."""
    ts = np.array([n[0] for n in nodes])
    ys = np.array([n[1] for n in nodes])
    fs = np.array([n[2] for n in nodes])
    idx = np.clip(np.searchsorted(ts, t_grid, side="right") - 1, 0, ts.size - 2)
    h = ts[idx + 1] - ts[idx]
    s = (t_grid - ts[idx]) / h
    s = s[:, None]
    h = h[:, None]
    h00 = (1.0 + 2.0 * s) * (1.0 - s) ** 2
    h10 = s * (1.0 - s) ** 2
    h01 = s * s * (3.0 - 2.0 * s)
    h11 = s * s * (s - 1.0)
    return (h00 * ys[idx] + h10 * h * fs[idx]
            + h01 * ys[idx + 1] + h11 * h * fs[idx + 1])


def simulate(joint: JointParams, F: float, forcing: Forcing,
             cfg: SimConfig = SimConfig(),
             theta0: float = 0.0, theta_dot0: float = 0.0) -> Trajectory:
    """Integrate the joint from (theta0, theta_dot0), zero by default."""
    cfg = cfg.resolved(forcing, joint.zeta)
    inv_I = 1.0 / joint.I
    zeta = joint.zeta
    Q0, W, phi = forcing.Q0, forcing.Omega, forcing.phi

    if cfg.model == "cubic":
        ts = taylor_coeffs(F, joint)
        c1, c3 = ts.c1, ts.c3

        def rhs(t, y):
            th, thd = y
            tau = c1 * th + c3 * th**3
            return np.array([thd, -zeta * thd - tau * inv_I
                             + Q0 * math.sin(W * t + phi)])
    else:
        def rhs(t, y):
            th, thd = y
            return np.array([thd, -zeta * thd - torque(th, F, joint) * inv_I
                             + Q0 * math.sin(W * t + phi)])

    nodes = _integrate(rhs, 0.0, cfg.t_end, (theta0, theta_dot0), cfg)
    dt = forcing.period / cfg.samples_per_period
    n = int(math.floor(cfg.t_end / dt)) + 1
    t_grid = np.arange(n) * dt
    y = _hermite_resample(nodes, t_grid)
    return Trajectory(times=t_grid, theta=y[:, 0], theta_dot=y[:, 1],
                      forcing=forcing, model=cfg.model,
                      transient_cut=cfg.transient_cut)


def steady_state_amplitude(traj: Trajectory, forcing: Forcing,
                           max_spread: float = 0.05) -> float:
    """Steady oscillation amplitude from the analytic-signal envelope.

    The post-transient segment is enveloped, 10% guard bands are dropped
    at each end, and the median over the final 10 forcing periods is
    returned. A relative envelope spread above max_spread in that window
    raises NotSteadyError.
    """
    period = forcing.period
    tail = traj.times[-1] - traj.transient_cut
    if tail < 10.0 * period:
        raise ValueError(
            f"need >= 10 forcing periods after the transient cut, have "
            f"{tail / period:.2f}")
    seg = traj.theta[traj.times >= traj.transient_cut]
    env = analytic_envelope(SampledSignal(samples=seg, dt=traj.dt))
    env = env[interior_slice(env.size)]
    keep = int(round(10.0 * period / traj.dt))
    window = env[-keep:] if keep < env.size else env
    med = float(np.median(window))
    spread = float(window.max() - window.min())
    if med > 0 and spread / med > max_spread:
        raise NotSteadyError(
            f"envelope spread {spread / med:.3f} exceeds {max_spread}; "
            f"response not steady (possible quasi-periodicity)")
    return med
