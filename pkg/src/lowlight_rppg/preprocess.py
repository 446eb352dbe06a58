"""Smoothness-priors detrending and zero-phase Butterworth bandpass."""

from __future__ import annotations

import warnings

import numpy as np
from scipy import sparse
from scipy.signal import butter, sosfiltfilt
from scipy.sparse.linalg import spsolve

from .errors import NonFiniteInput, NyquistViolation, SeriesTooShort

PULSE_BAND = (0.7, 4.0)
DEFAULT_LAMBDA = 100.0


def second_difference_matrix(n: int) -> sparse.spmatrix:
    """(n-2) x n second-difference operator with stencil rows [1, -2, 1]."""
    ones = np.ones(n)
    return sparse.spdiags([ones, -2 * ones, ones], (0, 1, 2), n - 2, n)


def detrend(series, lam: float = DEFAULT_LAMBDA) -> np.ndarray:
    """Remove the low-frequency trend from a series.

    Smoothness-priors detrending: the trend is the solution of
    ``(I + lam^2 * D2' D2) z = x`` and the output is ``x - z``, where D2 is
    the second-difference operator.  ``I + lam^2 * D2' D2`` is pentadiagonal
    symmetric positive definite so the sparse solve is O(T).

    Parameters
    ----------
    series : array_like
        The 1-D signal to detrend.
    lam : float
        Smoothing parameter; larger values remove slower trends only.
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1 or x.size < 3:
        raise SeriesTooShort(f"detrend needs T >= 3, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput("detrend input contains NaN or inf")
    if lam <= 0:
        raise ValueError("lambda must be positive")
    d2 = second_difference_matrix(x.size)
    a = sparse.identity(x.size, format="csc") + (lam**2) * (d2.T @ d2)
    trend = spsolve(a.tocsc(), x)
    return x - trend


def _settling_length(sos) -> int:
    """Samples for the slowest pole to decay below 1%."""
    poles = np.concatenate([np.roots([1.0, s[4], s[5]]) for s in sos])
    r = np.max(np.abs(poles))
    if r >= 1.0:
        return np.iinfo(np.int32).max
    return int(np.ceil(np.log(1e-2) / np.log(r)))


def bandpass(series, fs: float, low: float = PULSE_BAND[0],
             high: float = PULSE_BAND[1], order: int = 3) -> np.ndarray:
    """Zero-phase Butterworth bandpass (forward-backward filtering).

    Zero-phase keeps component/time alignment for the overlap-add stage;
    HR estimation uses spectral peaks so phase is irrelevant anyway.
    Both signal ends are reflection-padded to suppress edge transients.
    """
    x = np.asarray(series, dtype=float)
    if x.ndim != 1:
        raise ValueError("bandpass expects a 1-D series")
    if not (0 < low < high):
        raise ValueError(f"need 0 < low < high, got [{low}, {high}]")
    if high >= fs / 2:
        raise NyquistViolation(f"high cutoff {high} Hz >= Nyquist {fs / 2} Hz")
    sos = butter(order, [low, high], btype="bandpass", output="sos", fs=fs)
    settle = _settling_length(sos)
    if x.size < 3 * settle:
        warnings.warn(
            f"series of {x.size} samples is shorter than 3x the filter "
            f"settling length ({settle} samples); edge transients may remain",
            RuntimeWarning,
            stacklevel=2,
        )
    padlen = min(x.size - 1, 3 * settle)
    return sosfiltfilt(sos, x, padtype="odd", padlen=padlen)
