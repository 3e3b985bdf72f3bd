"""Figure rendering for the CLI report path.

Every plotting helper takes already-computed arrays and writes a PNG next
to the corresponding CSV; nothing here recomputes physics.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "plot_torque_curves",
    "plot_validity_curve",
    "plot_surface",
    "plot_maxima_line",
    "plot_spectrum",
    "plot_trajectory",
    "plot_compare",
]


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_torque_curves(curves, path):
    """curves: list of (label, theta array, torque array)."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, theta, tau in curves:
        ax.plot(theta, tau, label=label)
    ax.set_xlabel(r"deflection $\theta$ (rad)")
    ax.set_ylabel(r"torque (N$\cdot$m)")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_validity_curve(F, angle, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    finite = np.isfinite(angle)
    ax.plot(F[finite], angle[finite], ".-")
    if not finite.all():
        for f in F[~finite]:
            ax.axvline(f, color="tab:red", alpha=0.4, lw=0.8)
    ax.set_xlabel("tension F (N)")
    ax.set_ylabel("cubic-model validity angle (rad)")
    ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_surface(surface, path, maxima=None):
    fig, ax = plt.subplots(figsize=(6, 4.5))
    mesh = ax.pcolormesh(surface.F_grid, surface.Omega_grid / (2 * np.pi),
                         surface.amplitudes.T, shading="auto", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="amplitude (rad)")
    if maxima is not None:
        ax.plot(maxima.F_max, maxima.Omega / (2 * np.pi), "w--", lw=1.2)
    ax.set_xlabel("tension F (N)")
    ax.set_ylabel("forcing frequency (Hz)")
    return _save(fig, path)


def plot_maxima_line(maxima, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(maxima.Omega / (2 * np.pi), maxima.F_max, ".-")
    ax.set_xlabel("forcing frequency (Hz)")
    ax.set_ylabel(r"$F_{max}$ (N)")
    ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_spectrum(indices, magnitudes, path):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.stem(indices, magnitudes)
    ax.set_yscale("log")
    ax.set_xlabel("harmonic index")
    ax.set_ylabel("|line amplitude|")
    ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_trajectory(times, theta, path, envelope=None):
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(times, theta, lw=0.7)
    if envelope is not None:
        ax.plot(times, envelope, "tab:orange", lw=1.2)
        ax.plot(times, -envelope, "tab:orange", lw=1.2)
    ax.set_xlabel("time (s)")
    ax.set_ylabel(r"$\theta$ (rad)")
    ax.grid(alpha=0.3)
    return _save(fig, path)


def plot_compare(F, amp_hb, amp_volterra, amp_sim, path, freq_hz):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(F, amp_hb, "-", label="harmonic balance")
    ax.plot(F, amp_volterra, "--", label="Volterra (7th order)")
    ax.plot(F, amp_sim, "o", ms=4, mfc="none", label="simulation")
    ax.set_xlabel("tension F (N)")
    ax.set_ylabel("amplitude (rad)")
    ax.set_title(f"forcing at {freq_hz:g} Hz")
    ax.legend(fontsize=8)
    ax.grid(alpha=0.3)
    return _save(fig, path)
