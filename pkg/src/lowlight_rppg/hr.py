"""Heart-rate estimation from the pulse-wave spectrum."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SeriesTooShort, ZeroSignal
from .preprocess import PULSE_BAND

# Zero-pad target: <= 0.11 bpm resolution at fs = 30 Hz.
_MIN_NFFT = 2**14


@dataclass(frozen=True)
class HrEstimate:
    bpm: float
    peak_freq: float
    spectrum: tuple[np.ndarray, np.ndarray]  # (freqs, power) over the pulse band


def estimate_hr_series(samples, fs: float, min_duration_s: float = 10.0) -> HrEstimate:
    """HR (bpm) from the spectral power peak of a pulse signal.

    The signal is z-score normalized (making the estimate amplitude
    invariant) and zero-padded to at least 2^14 points; HR is 60 times the
    argmax frequency of the FFT power within [0.7, 4.0] Hz.  Ties break
    toward the lower frequency (favoring the fundamental over a harmonic);
    no peak interpolation is applied.
    """
    x = np.asarray(samples, dtype=float)
    if x.size < min_duration_s * fs:
        raise SeriesTooShort(
            f"need at least {min_duration_s} s of samples, got {x.size / fs:.2f} s")
    x = x - x.mean()
    std = x.std()
    if std == 0.0:
        raise ZeroSignal("constant pulse wave has no spectral peak")
    x = x / std
    n = max(_MIN_NFFT, x.size)
    power = np.abs(np.fft.rfft(x, n=n)) ** 2
    freqs = np.fft.rfftfreq(n, d=1.0 / fs)
    mask = (freqs >= PULSE_BAND[0]) & (freqs <= PULSE_BAND[1])
    band_freqs = freqs[mask]
    band_power = power[mask]
    peak = float(band_freqs[np.argmax(band_power)])
    return HrEstimate(bpm=60.0 * peak, peak_freq=peak,
                      spectrum=(band_freqs, band_power))


def estimate_hr(pulse) -> HrEstimate:
    """HR estimate from a PulseWave (or any object with samples and fs)."""
    return estimate_hr_series(pulse.samples, pulse.fs)


def sliding_hr(samples, fs: float, win_s: float = 10.0,
               step_s: float = 1.0) -> list[tuple[float, float]]:
    """Per-window HR estimates as (window center time, bpm) pairs."""
    x = np.asarray(samples, dtype=float)
    win = int(round(win_s * fs))
    step = int(round(step_s * fs))
    if x.size < win:
        raise SeriesTooShort(f"need at least {win_s} s of samples")
    out = []
    for start in range(0, x.size - win + 1, step):
        est = estimate_hr_series(x[start:start + win], fs, min_duration_s=win_s)
        out.append((start / fs + win_s / 2.0, est.bpm))
    return out
