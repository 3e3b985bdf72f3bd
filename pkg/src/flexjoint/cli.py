"""Command-line front end: loads a joint config, dispatches analyses, and
writes CSV data files with JSON manifest sidecars plus rendered figures.

Frequencies are accepted in Hz on the command line and converted to rad/s
internally; both values are recorded in the manifest. Tensions may be
given in newtons (--tension-n) or relative to the critical tension
(--tension-rel).
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .config import (ConfigError, DEFAULT_CONFIG_TEXT, JointConfig,
                     load_config, parse_config)
from .hb import (DuffingCoeffs, Forcing, duffing_coeffs,
                 largest_stable_amplitude, line_of_maxima, response_surface,
                 solve_amplitudes)
from .joint import (critical_tension, optimal_linear_tension, taylor_coeffs,
                    torque, validity_angle, ValidityConfig)
from .output import format_float, write_csv, write_manifest
from .signals import SampledSignal, analytic_envelope
from .simulate import SimConfig, simulate, steady_state_amplitude
from .volterra import multi_tone_spectrum, sine_input_lines, single_tone_response
from .wake import WakeCalibration, WakeParams, wake_to_forcing

TWO_PI = 2.0 * math.pi


def _load(args) -> JointConfig:
    if args.config is None:
        return parse_config(DEFAULT_CONFIG_TEXT)
    return load_config(args.config)


def _q0(args, cfg: JointConfig) -> float:
    if getattr(args, "q0", None) is not None:
        return args.q0
    if cfg.Q0 is None:
        raise ConfigError("missing required config key 'Q0I_N_m' "
                          "(or pass --q0)")
    return cfg.Q0


def _tension(args, cfg: JointConfig) -> float:
    if args.tension_n is not None:
        return args.tension_n
    if args.tension_rel is not None:
        return args.tension_rel * critical_tension(cfg.joint)
    raise ConfigError("one of --tension-n / --tension-rel is required")


def _tension_list(spec: str, relative: bool, cfg: JointConfig) -> list[float]:
    vals = [float(tok) for tok in spec.split(",") if tok.strip()]
    if relative:
        fstar = critical_tension(cfg.joint)
        vals = [v * fstar for v in vals]
    return vals


def _grid(spec: str) -> tuple[int, int]:
    try:
        a, b = spec.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"grid must look like 200x200, got {spec!r}") from None


def _pair(spec: str) -> tuple[float, float]:
    try:
        a, b = spec.split(",")
        return float(a), float(b)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"range must look like LO,HI, got {spec!r}") from None


def _out(args, name: str) -> str:
    os.makedirs(args.out_dir, exist_ok=True)
    return os.path.join(args.out_dir, name)


def _maybe_plot(args, render, *render_args, **kw):
    if args.no_plot:
        return None
    from . import plots
    return getattr(plots, render)(*render_args, **kw)


# ---------------------------------------------------------------- commands

def cmd_torque_curve(args) -> int:
    cfg = _load(args)
    fstar = critical_tension(cfg.joint)
    tensions = _tension_list(args.tensions, args.relative_to == "fstar", cfg)
    thetas = np.linspace(-args.theta_max, args.theta_max, args.points)
    rows, curves = [], []
    for F in tensions:
        tau = torque(thetas, F, cfg.joint)
        curves.append((f"F = {F / fstar:.3f} F*", thetas, tau))
        rows.extend((F, th, tv) for th, tv in zip(thetas, tau))
    path = _out(args, "torque_curves.csv")
    write_csv(path, ["F_N", "theta_rad", "torque_N_m"], rows)
    fig = _maybe_plot(args, "plot_torque_curves", curves,
                      _out(args, "torque_curves.png"))
    write_manifest(path, "torque-curve", cfg.echo_si(),
                   parameters={"tensions_N": tensions, "F_star_N": fstar,
                               "theta_max_rad": args.theta_max},
                   extra={"figure": fig})
    return 0


def cmd_taylor(args) -> int:
    cfg = _load(args)
    fstar = critical_tension(cfg.joint)
    f0 = optimal_linear_tension(cfg.joint, args.theta_ref)
    tensions = _tension_list(args.tensions, args.relative_to == "fstar", cfg)
    rows = []
    for F in tensions:
        ts = taylor_coeffs(F, cfg.joint, args.theta_ref)
        rows.append((F, ts.c1, ts.c3, ts.c5, ts.c7,
                     ts.c1 / cfg.joint.I, ts.c3 / cfg.joint.I))
    path = _out(args, "taylor_coeffs.csv")
    write_csv(path, ["F_N", "c1_N_m_per_rad", "c3_N_m_per_rad3",
                     "c5_N_m_per_rad5", "c7_N_m_per_rad7",
                     "k_1_per_s2", "a_1_per_s2_rad2"], rows)
    write_manifest(path, "taylor", cfg.echo_si(),
                   parameters={"tensions_N": tensions,
                               "theta_ref_rad": args.theta_ref,
                               "F_star_N": fstar, "F0_N": f0})
    return 0


def cmd_error_map(args) -> int:
    cfg = _load(args)
    vcfg = ValidityConfig(delta_F=args.delta_f)
    F = np.arange(args.f_min, args.f_max + 0.5 * args.f_step, args.f_step)
    angles = np.array([validity_angle(float(f), cfg.joint, vcfg) for f in F])
    rows = [(f, a if math.isfinite(a) else math.inf,
             0 if math.isfinite(a) else 1) for f, a in zip(F, angles)]
    path = _out(args, "validity_angle.csv")
    write_csv(path, ["F_N", "validity_angle_rad", "beyond_pi_over_2"], rows)
    fig = _maybe_plot(args, "plot_validity_curve", F, angles,
                      _out(args, "validity_angle.png"))
    write_manifest(path, "error-map", cfg.echo_si(),
                   parameters={"F_min_N": args.f_min, "F_max_N": args.f_max,
                               "F_step_N": args.f_step,
                               "delta_F_N": args.delta_f},
                   extra={"figure": fig})
    return 0


def _surface_from_args(args, cfg):
    fstar = critical_tension(cfg.joint)
    f_range = args.f_range or (0.05 * fstar, 1.5 * fstar)
    lo_hz, hi_hz = args.freq_range_hz
    return response_surface(
        cfg.joint, _q0(args, cfg), f_range,
        (lo_hz * TWO_PI, hi_hz * TWO_PI),
        resolution=_grid(args.grid),
        linear_surrogate=args.linear_surrogate), f_range


def cmd_hb_surface(args) -> int:
    cfg = _load(args)
    surface, f_range = _surface_from_args(args, cfg)
    rows = []
    for i, F in enumerate(surface.F_grid):
        for j, W in enumerate(surface.Omega_grid):
            rows.append((F, W, surface.amplitudes[i, j],
                         int(surface.multiplicity[i, j]), 1))
    path = _out(args, "hb_surface.csv")
    write_csv(path, ["F_N", "Omega_rad_s", "amplitude_rad", "n_roots",
                     "stable_flag"], rows)
    fig = _maybe_plot(args, "plot_surface", surface,
                      _out(args, "hb_surface.png"))
    write_manifest(path, "hb-surface", cfg.echo_si(),
                   parameters={"grid": args.grid, "F_range_N": list(f_range),
                               "freq_range_hz": list(args.freq_range_hz),
                               "Q0_rad_per_s2": _q0(args, cfg),
                               "linear_surrogate": args.linear_surrogate},
                   extra={"figure": fig})
    return 0


def cmd_maxima_line(args) -> int:
    cfg = _load(args)
    surface, f_range = _surface_from_args(args, cfg)
    maxima = line_of_maxima(surface, cfg.joint)
    rows = [(W, fm, am, int(dg)) for W, fm, am, dg in
            zip(maxima.Omega, maxima.F_max, maxima.amplitude,
                maxima.degenerate)]
    path = _out(args, "maxima_line.csv")
    write_csv(path, ["Omega_rad_s", "F_max_N", "amplitude_rad", "degenerate"],
              rows)
    fig = _maybe_plot(args, "plot_maxima_line", maxima,
                      _out(args, "maxima_line.png"))
    write_manifest(path, "maxima-line", cfg.echo_si(),
                   parameters={"grid": args.grid, "F_range_N": list(f_range),
                               "freq_range_hz": list(args.freq_range_hz),
                               "Q0_rad_per_s2": _q0(args, cfg)},
                   extra={"figure": fig})
    return 0


def cmd_volterra_response(args) -> int:
    cfg = _load(args)
    F = _tension(args, cfg)
    forcing = Forcing(Q0=_q0(args, cfg), Omega=args.freq_hz * TWO_PI)
    coeffs = duffing_coeffs(F, cfg.joint)
    spectrum = multi_tone_spectrum(coeffs, sine_input_lines(forcing),
                                   max_order=args.max_order)
    Y, amplitude = single_tone_response(coeffs, forcing, args.max_order)
    rows = []
    for order in sorted(spectrum.per_order_contributions):
        contrib = spectrum.per_order_contributions[order]
        for m in sorted(contrib):
            v = contrib[m]
            rows.append((m, m * spectrum.base_frequency, v.real, v.imag,
                         order))
    path = _out(args, "volterra_spectrum.csv")
    write_csv(path, ["harmonic_index", "freq_rad_s", "re", "im", "order"],
              rows)
    mags = [(m, abs(spectrum.line(m))) for m in sorted(spectrum.lines)]
    fig = _maybe_plot(args, "plot_spectrum",
                      [m for m, _ in mags], [v for _, v in mags],
                      _out(args, "volterra_spectrum.png"))
    write_manifest(path, "volterra-response", cfg.echo_si(),
                   parameters={"F_N": F, "freq_hz": args.freq_hz,
                               "Omega_rad_s": forcing.Omega,
                               "Q0_rad_per_s2": forcing.Q0,
                               "max_order": args.max_order},
                   extra={"figure": fig,
                          "Y_plus_omega": [Y.real, Y.imag],
                          "amplitude_rad": amplitude})
    return 0


def cmd_simulate(args) -> int:
    cfg = _load(args)
    F = _tension(args, cfg)
    forcing = Forcing(Q0=_q0(args, cfg), Omega=args.freq_hz * TWO_PI,
                      phi=args.phase)
    sim_cfg = SimConfig(t_end=args.t_end, transient_cut=args.transient_cut,
                        model=args.model)
    traj = simulate(cfg.joint, F, forcing, sim_cfg)
    header = ["t_s", "theta_rad", "theta_dot_rad_s"]
    columns = [traj.times, traj.theta, traj.theta_dot]
    env = None
    if args.envelope:
        env = analytic_envelope(SampledSignal(samples=traj.theta, dt=traj.dt))
        header.append("envelope_rad")
        columns.append(env)
    path = _out(args, "trajectory.csv")
    write_csv(path, header, zip(*columns))
    fig = _maybe_plot(args, "plot_trajectory", traj.times, traj.theta,
                      _out(args, "trajectory.png"), envelope=env)
    extra = {"figure": fig}
    try:
        extra["steady_amplitude_rad"] = steady_state_amplitude(traj, forcing)
    except Exception as exc:  # diagnostic only; trajectory is the product
        extra["steady_amplitude_error"] = str(exc)
    write_manifest(path, "simulate", cfg.echo_si(),
                   parameters={"F_N": F, "freq_hz": args.freq_hz,
                               "Omega_rad_s": forcing.Omega,
                               "Q0_rad_per_s2": forcing.Q0,
                               "phi_rad": args.phase, "model": args.model,
                               "t_end_s": traj.times[-1],
                               "transient_cut_s": traj.transient_cut},
                   extra=extra)
    return 0


def cmd_compare(args) -> int:
    cfg = _load(args)
    fstar = critical_tension(cfg.joint)
    lo, hi = args.f_rel_range
    tensions = np.linspace(lo * fstar, hi * fstar, args.points)
    Q0 = _q0(args, cfg)
    forcing = Forcing(Q0=Q0, Omega=args.freq_hz * TWO_PI)
    sim_cfg = SimConfig(model=args.model)
    rows = []
    for F in tensions:
        coeffs = duffing_coeffs(float(F), cfg.joint)
        amp_hb = largest_stable_amplitude(coeffs, forcing)
        _, amp_v = single_tone_response(coeffs, forcing, args.max_order)
        traj = simulate(cfg.joint, float(F), forcing, sim_cfg)
        amp_sim = steady_state_amplitude(traj, forcing)
        rows.append((F, amp_hb, amp_v, amp_sim))
    path = _out(args, "compare.csv")
    write_csv(path, ["F_N", "amplitude_hb_rad", "amplitude_volterra_rad",
                     "amplitude_sim_rad"], rows)
    arr = np.array(rows)
    fig = _maybe_plot(args, "plot_compare", arr[:, 0], arr[:, 1], arr[:, 2],
                      arr[:, 3], _out(args, "compare.png"),
                      freq_hz=args.freq_hz)
    write_manifest(path, "compare", cfg.echo_si(),
                   parameters={"freq_hz": args.freq_hz,
                               "Omega_rad_s": forcing.Omega,
                               "F_rel_range": list(args.f_rel_range),
                               "F_star_N": fstar, "points": args.points,
                               "Q0_rad_per_s2": Q0, "model": args.model,
                               "max_order": args.max_order},
                   extra={"figure": fig})
    return 0


def cmd_wake_forcing(args) -> int:
    cfg = _load(args)
    if args.c_omega is not None and args.c_amp is not None:
        calib = WakeCalibration(c_omega=args.c_omega, c_amp=args.c_amp)
    elif cfg.wake_calibration is not None:
        calib = cfg.wake_calibration
    else:
        raise ConfigError("wake calibration missing: set wake_c_omega / "
                          "wake_c_amp in the config or pass --c-omega / "
                          "--c-amp")
    wake = WakeParams(flow_speed=args.flow_speed, vorticity=args.vorticity,
                      vortex_spacing=args.vortex_spacing,
                      fluid_density=args.fluid_density,
                      phase_offset=args.phase_offset)
    forcing = wake_to_forcing(wake, calib)
    print(f"Q0 = {format_float(forcing.Q0)} rad/s^2")
    print(f"Omega = {format_float(forcing.Omega)} rad/s "
          f"({format_float(forcing.Omega / TWO_PI)} Hz)")
    print(f"phi = {format_float(forcing.phi)} rad")
    path = _out(args, "wake_forcing.csv")
    write_csv(path, ["Q0_rad_per_s2", "Omega_rad_s", "phi_rad"],
              [(forcing.Q0, forcing.Omega, forcing.phi)])
    write_manifest(path, "wake-forcing", cfg.echo_si(),
                   parameters={"flow_speed_m_s": wake.flow_speed,
                               "vorticity_1_s": wake.vorticity,
                               "vortex_spacing_m": wake.vortex_spacing,
                               "fluid_density_kg_m3": wake.fluid_density,
                               "phase_offset_rad": wake.phase_offset,
                               "c_omega": calib.c_omega,
                               "c_amp": calib.c_amp})
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flexjoint",
        description="Periodic-response analysis of a tension-tuned "
                    "compliant joint.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="joint config file (key = value, "
                       "unit-suffixed keys); built-in reference joint when "
                       "omitted")
        p.add_argument("--out-dir", default=".", help="output directory")
        p.add_argument("--no-plot", action="store_true",
                       help="skip figure rendering")

    p = sub.add_parser("torque-curve", help="torque vs deflection curves")
    common(p)
    p.add_argument("--tensions", default="0.5,0.9,1.0,1.5",
                   help="comma-separated tensions")
    p.add_argument("--relative-to", choices=["fstar", "absolute"],
                   default="fstar")
    p.add_argument("--theta-max", type=float, default=0.5)
    p.add_argument("--points", type=int, default=201)
    p.set_defaults(func=cmd_torque_curve)

    p = sub.add_parser("taylor", help="odd-polynomial torque coefficients")
    common(p)
    p.add_argument("--tensions", default="0.5,0.9,1.0,1.5")
    p.add_argument("--relative-to", choices=["fstar", "absolute"],
                   default="fstar")
    p.add_argument("--theta-ref", type=float, default=0.5)
    p.set_defaults(func=cmd_taylor)

    p = sub.add_parser("error-map",
                       help="cubic-model validity angle vs tension")
    common(p)
    p.add_argument("--f-min", type=float, default=0.1)
    p.add_argument("--f-max", type=float, default=1.2)
    p.add_argument("--f-step", type=float, default=0.001)
    p.add_argument("--delta-f", type=float, default=0.05,
                   help="force-sensor resolution (N)")
    p.set_defaults(func=cmd_error_map)

    def sweep_opts(p):
        p.add_argument("--grid", default="200x200", help="NxM (F x freq)")
        p.add_argument("--f-range", type=_pair, default=None,
                       help="tension range LO,HI in N "
                       "(default 0.05*F*,1.5*F*)")
        p.add_argument("--freq-range-hz", type=_pair, default=(0.05, 3.0))
        p.add_argument("--q0", type=float, default=None,
                       help="forcing amplitude (rad/s^2), overrides config")
        p.add_argument("--linear-surrogate", action="store_true",
                       help="force the cubic coefficient to zero")

    p = sub.add_parser("hb-surface",
                       help="harmonic-balance amplitude over (F, freq)")
    common(p)
    sweep_opts(p)
    p.set_defaults(func=cmd_hb_surface)

    p = sub.add_parser("maxima-line",
                       help="tension of maximum response per frequency")
    common(p)
    sweep_opts(p)
    p.set_defaults(func=cmd_maxima_line)

    def point_opts(p):
        p.add_argument("--tension-n", type=float, default=None,
                       help="tension in N")
        p.add_argument("--tension-rel", type=float, default=None,
                       help="tension as a multiple of F*")
        p.add_argument("--freq-hz", type=float, required=True)
        p.add_argument("--q0", type=float, default=None)

    p = sub.add_parser("volterra-response",
                       help="Volterra output spectrum at one operating point")
    common(p)
    point_opts(p)
    p.add_argument("--max-order", type=int, choices=[1, 3, 5, 7], default=7)
    p.set_defaults(func=cmd_volterra_response)

    p = sub.add_parser("simulate", help="time-domain trajectory")
    common(p)
    point_opts(p)
    p.add_argument("--model", choices=["exact", "cubic"], default="exact")
    p.add_argument("--t-end", type=float, default=None)
    p.add_argument("--transient-cut", type=float, default=None)
    p.add_argument("--phase", type=float, default=0.0)
    p.add_argument("--envelope", action="store_true",
                   help="add an analytic-envelope column")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare",
                       help="three-route amplitude table over a tension cut")
    common(p)
    p.add_argument("--freq-hz", type=float, required=True)
    p.add_argument("--f-rel-range", type=_pair, default=(0.5, 1.5),
                   help="tension range as multiples of F*")
    p.add_argument("--points", type=int, default=25)
    p.add_argument("--q0", type=float, default=None)
    p.add_argument("--model", choices=["exact", "cubic"], default="exact")
    p.add_argument("--max-order", type=int, choices=[1, 3, 5, 7], default=7)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("wake-forcing",
                       help="map wake parameters to harmonic forcing")
    common(p)
    p.add_argument("--flow-speed", type=float, required=True)
    p.add_argument("--vorticity", type=float, required=True)
    p.add_argument("--vortex-spacing", type=float, required=True)
    p.add_argument("--fluid-density", type=float, default=1000.0)
    p.add_argument("--phase-offset", type=float, default=0.0)
    p.add_argument("--c-omega", type=float, default=None)
    p.add_argument("--c-amp", type=float, default=None)
    p.set_defaults(func=cmd_wake_forcing)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
