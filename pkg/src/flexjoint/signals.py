"""Envelope and harmonic-content extraction from uniformly sampled signals."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["SampledSignal", "analytic_envelope", "harmonic_amplitudes"]

GUARD_FRACTION = 0.1


@dataclass(frozen=True)
class SampledSignal:
    """Uniformly sampled real signal; at least 16 samples."""

    samples: np.ndarray
    dt: float

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=float)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1 or samples.size < 16:
            raise ValueError(f"need a 1-d signal of >= 16 samples, "
                             f"got shape {samples.shape}")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("signal contains non-finite samples")

    @property
    def duration(self) -> float:
        return self.samples.size * self.dt

    def times(self) -> np.ndarray:
        return np.arange(self.samples.size) * self.dt


def analytic_envelope(sig: SampledSignal) -> np.ndarray:
    """Modulus of the discrete analytic signal.

    Negative frequencies are zeroed and positive ones doubled (DC and
    Nyquist kept as is) on the signal's own length; zero-padding to a
    radix-friendly length was measured to leak ~1e-3 relative envelope
    bias and is deliberately avoided. Callers should discard
    GUARD_FRACTION of the samples at each end before trusting the values.
    """
    x = sig.samples
    n = x.size
    spec = np.fft.fft(x)
    h = np.zeros(n)
    h[0] = 1.0
    if n % 2 == 0:
        h[n // 2] = 1.0
        h[1:n // 2] = 2.0
    else:
        h[1:(n + 1) // 2] = 2.0
    analytic = np.fft.ifft(spec * h)
    return np.abs(analytic)


def interior_slice(n: int, guard: float = GUARD_FRACTION) -> slice:
    """Index slice with the guard fraction removed from each end."""
    cut = int(math.ceil(n * guard))
    return slice(cut, n - cut)


def harmonic_amplitudes(sig: SampledSignal, Omega: float, n: int) -> np.ndarray:
    """Amplitudes of harmonics 1..n of the fundamental Omega.

    The window must span an integer number of fundamental periods within
    0.1%; amplitudes come from direct correlation,
    2*|<sig, exp(-j*m*Omega*t)>|/N, with no window correction.
    """
    if not Omega > 0:
        raise ValueError(f"Omega must be positive, got {Omega}")
    if n < 1:
        raise ValueError(f"need at least one harmonic, got {n}")
    cycles = sig.duration * Omega / (2.0 * math.pi)
    nearest = round(cycles)
    if nearest < 1 or abs(cycles - nearest) > 1e-3 * nearest:
        raise ValueError(
            f"window spans {cycles:.6f} fundamental periods; an integer "
            f"count (within 0.1%) is required")
    t = sig.times()
    amps = np.empty(n)
    for m in range(1, n + 1):
        corr = np.sum(sig.samples * np.exp(-1j * m * Omega * t))
        amps[m - 1] = 2.0 * abs(corr) / sig.samples.size
    return amps
