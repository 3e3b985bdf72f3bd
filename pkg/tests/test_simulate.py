import math

import numpy as np
import pytest

from flexjoint import (Forcing, IntegrationError, NotSteadyError, SimConfig,
                       Trajectory, critical_tension, duffing_coeffs, h1,
                       simulate, steady_state_amplitude)

TWO_PI = 2.0 * math.pi


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(abs_tol=0.0)
    with pytest.raises(ValueError):
        SimConfig(model="quintic")
    with pytest.raises(ValueError):
        SimConfig(samples_per_period=32)
    with pytest.raises(ValueError):
        SimConfig(t_end=1.0, transient_cut=2.0)


def test_unforced_equilibrium_stays_put(joint):
    traj = simulate(joint, 0.5, Forcing(Q0=0.0, Omega=TWO_PI),
                    SimConfig(t_end=4.0, transient_cut=0.0))
    assert np.max(np.abs(traj.theta)) < 1e-12
    assert np.max(np.abs(traj.theta_dot)) < 1e-12


def test_free_decay_envelope(joint):
    # unforced ringdown decays as exp(-zeta*t/2)
    c = duffing_coeffs(critical_tension(joint), joint)
    period = TWO_PI / math.sqrt(c.k)
    traj = simulate(joint, critical_tension(joint),
                    Forcing(Q0=0.0, Omega=math.sqrt(c.k)),
                    SimConfig(t_end=60 * period, transient_cut=0.0),
                    theta0=0.01)
    peaks = []
    th = traj.theta
    for i in range(1, th.size - 1):
        if th[i] > th[i - 1] and th[i] > th[i + 1] and th[i] > 2e-5:
            peaks.append((traj.times[i], th[i]))
    assert len(peaks) > 8
    t0, p0 = peaks[1]
    t1, p1 = peaks[-1]
    rate = -math.log(p1 / p0) / (t1 - t0)
    assert rate == pytest.approx(c.zeta / 2.0, rel=0.02)


def test_linear_steady_amplitude_matches_transfer_function(joint, q0):
    # cubic model at F = F* has a ~ 0: response is Q0*|H1|
    fstar = critical_tension(joint)
    c = duffing_coeffs(fstar, joint)
    f = Forcing(Q0=q0, Omega=TWO_PI * 0.25)
    traj = simulate(joint, fstar, f, SimConfig(model="cubic"))
    amp = steady_state_amplitude(traj, f)
    assert amp == pytest.approx(q0 * abs(h1(f.Omega, c)), rel=5e-3)


def test_tolerance_refinement_converges(joint, q0):
    f = Forcing(Q0=q0, Omega=TWO_PI * 1.5)
    F = 0.8 * critical_tension(joint)
    loose = steady_state_amplitude(
        simulate(joint, F, f, SimConfig(abs_tol=1e-6, rel_tol=1e-6)), f)
    tight = steady_state_amplitude(
        simulate(joint, F, f, SimConfig(abs_tol=5e-7, rel_tol=5e-7)), f)
    assert abs(loose - tight) / tight < 1e-3


def test_phase_shift_leaves_amplitude_invariant(joint, q0):
    F = 0.8 * critical_tension(joint)
    amps = []
    for phi in (0.0, math.pi):
        f = Forcing(Q0=q0, Omega=TWO_PI * 1.5, phi=phi)
        amps.append(steady_state_amplitude(simulate(joint, F, f), f))
    assert abs(amps[0] - amps[1]) / amps[0] < 1e-6


def test_exact_and_cubic_agree_at_small_drive(joint, q0):
    F = 0.8 * critical_tension(joint)
    f = Forcing(Q0=0.2 * q0, Omega=TWO_PI * 1.5)
    a_exact = steady_state_amplitude(simulate(joint, F, f), f)
    a_cubic = steady_state_amplitude(
        simulate(joint, F, f, SimConfig(model="cubic")), f)
    assert a_exact == pytest.approx(a_cubic, rel=1e-3)


def test_trajectory_grid_uniform(joint, q0):
    f = Forcing(Q0=q0, Omega=TWO_PI * 1.5)
    traj = simulate(joint, 0.5, f, SimConfig(t_end=6.0, transient_cut=2.0))
    dts = np.diff(traj.times)
    assert np.allclose(dts, dts[0], rtol=1e-12)
    assert traj.dt == pytest.approx(f.period / 64, rel=1e-12)
    assert traj.model == "exact"


def test_short_tail_rejected(joint, q0):
    f = Forcing(Q0=q0, Omega=TWO_PI * 1.5)
    traj = simulate(joint, 0.5, f, SimConfig(t_end=5.0, transient_cut=2.0))
    with pytest.raises(ValueError):
        steady_state_amplitude(traj, f)


def test_not_steady_detection(joint, q0):
    # synthetic beat: envelope oscillates by far more than 5%
    f = Forcing(Q0=q0, Omega=TWO_PI * 1.0)
    t = np.arange(0, 40.0, f.period / 64)
    theta = (1.0 + 0.5 * np.sin(0.7 * t)) * np.sin(f.Omega * t)
    traj = Trajectory(times=t, theta=theta, theta_dot=np.zeros_like(t),
                      forcing=f, model="exact", transient_cut=10.0)
    with pytest.raises(NotSteadyError):
        steady_state_amplitude(traj, f)


def test_integration_error_on_blowup():
    # y' = y^2 from y(0) = 1 blows up at t = 1; the stepper must fail
    # loudly instead of returning garbage
    from flexjoint.simulate import _integrate

    cfg = SimConfig(t_end=2.0, transient_cut=0.0)
    with pytest.raises(IntegrationError):
        _integrate(lambda t, y: y * y, 0.0, 2.0, np.array([1.0]), cfg)
