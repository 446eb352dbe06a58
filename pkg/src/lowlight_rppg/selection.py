"""Reference-HR tracking and spectral-mask component selection."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import NoComponents, SeriesTooShort, ZeroSignal
from .preprocess import PULSE_BAND
from .ssa import SsaDecomposition

SIGMA_INIT = 0.05   # Hz, mask half-width seed before any HR history exists
SIGMA_FLOOR = 0.01  # Hz, keeps the mask from collapsing when HR is constant
DEFAULT_SEC_CHN = 10

# Minimum FFT length for dominant-frequency search, so the frequency
# resolution is at most fs/8192.
_MIN_NFFT = 8192


@dataclass(frozen=True)
class ReferenceHrState:
    """Running instantaneous reference HR and its dispersion, in Hz."""

    f_r: float | None = None
    sigma_fr: float = SIGMA_INIT
    history: tuple[float, ...] = ()


@dataclass(frozen=True)
class CandidateComponent:
    series: np.ndarray
    dominant_freq: float
    singular_value: float


class MaskReason(enum.Enum):
    FUNDAMENTAL_MATCH = "fundamental-match"
    HARMONIC_MATCH = "harmonic-match"
    BAND_REJECT = "band-reject"
    WINDOW_REJECT = "window-reject"


@dataclass(frozen=True)
class MaskDecision:
    accepted: bool
    reason: MaskReason


def dominant_frequency(series, fs: float, band: tuple[float, float] = PULSE_BAND) -> float:
    """Frequency of the largest FFT magnitude within ``band``.

    The series is zero-padded to at least 8192 points; ties resolve to the
    lower frequency because argmax returns the first maximum.
    """
    x = np.asarray(series, dtype=float)
    if x.size < 2:
        raise SeriesTooShort("dominant_frequency needs at least 2 samples")
    # remove the mean so zero-padding does not smear a DC offset across
    # the whole spectrum
    x = x - x.mean()
    if not np.any(x):
        raise ZeroSignal("constant series has no dominant frequency")
    n = max(_MIN_NFFT, x.size)
    mag = np.abs(np.fft.rfft(x, n=n))
    freqs = np.fft.rfftfreq(n, d=1.0 / fs)
    mask = (freqs >= band[0]) & (freqs <= band[1])
    if not np.any(mask):
        raise ValueError(f"band {band} contains no FFT bins at fs={fs}")
    return float(freqs[mask][np.argmax(mag[mask])])


def update_reference(state: ReferenceHrState, green_window, fs: float) -> ReferenceHrState:
    """Advance the reference HR with one 10 s green-channel window.

    The instantaneous HR is the dominant in-band frequency of the window;
    the dispersion is the sample standard deviation over all history so
    far, floored at SIGMA_FLOOR, and stays at SIGMA_INIT until two
    windows have been seen.
    """
    f = dominant_frequency(green_window, fs)
    history = state.history + (f,)
    if len(history) >= 2:
        sigma = max(float(np.std(history, ddof=1)), SIGMA_FLOOR)
    else:
        sigma = SIGMA_INIT
    return ReferenceHrState(f_r=f, sigma_fr=sigma, history=history)


def spectral_mask(candidates, state: ReferenceHrState) -> list[MaskDecision]:
    """Accept candidates near the reference HR or its first harmonic.

    A candidate at frequency f_i is accepted iff it lies inside the pulse
    band [0.7, 4] Hz and either |f_i - f_r| <= 3*sigma (fundamental) or
    |f_i/2 - f_r| <= 3*sigma (first harmonic, twice the reference).
    """
    if state.f_r is None:
        raise ValueError("reference HR not yet initialized")
    f_r, tol = state.f_r, 3.0 * state.sigma_fr
    decisions = []
    for cand in candidates:
        f_i = cand.dominant_freq
        if not (PULSE_BAND[0] <= f_i <= PULSE_BAND[1]):
            decisions.append(MaskDecision(False, MaskReason.BAND_REJECT))
        elif abs(f_i - f_r) <= tol:
            decisions.append(MaskDecision(True, MaskReason.FUNDAMENTAL_MATCH))
        elif abs(f_i / 2.0 - f_r) <= tol:
            decisions.append(MaskDecision(True, MaskReason.HARMONIC_MATCH))
        else:
            decisions.append(MaskDecision(False, MaskReason.WINDOW_REJECT))
    return decisions


@dataclass(frozen=True)
class SelectionResult:
    accepted: list[CandidateComponent]
    decisions: list[MaskDecision]
    candidates: list[CandidateComponent]
    fallback_used: bool


def select_candidates(decomposition: SsaDecomposition, fs: float,
                      state: ReferenceHrState,
                      sec_chn: int = DEFAULT_SEC_CHN) -> SelectionResult:
    """Apply the spectral mask to the top-``sec_chn`` components.

    Candidate dominant frequencies are searched over the full spectrum
    (excluding DC) so that out-of-band components such as residual drift
    get their true frequency and are band-rejected.  If the mask rejects
    everything, the single component closest to the reference HR is kept
    (flagged) so downstream fusion never receives an empty window.
    """
    if len(decomposition) == 0:
        raise NoComponents("decomposition has no components above the cutoff")
    full_band = (0.05, fs / 2.0)
    candidates = []
    for series, sv in zip(decomposition.components[:sec_chn],
                          decomposition.singular_values[:sec_chn]):
        f = dominant_frequency(series, fs, band=full_band)
        candidates.append(CandidateComponent(series=series, dominant_freq=f,
                                             singular_value=float(sv)))
    decisions = spectral_mask(candidates, state)
    accepted = [c for c, d in zip(candidates, decisions) if d.accepted]
    fallback = False
    if not accepted:
        fallback = True
        nearest = min(candidates, key=lambda c: abs(c.dominant_freq - state.f_r))
        accepted = [nearest]
    return SelectionResult(accepted=accepted, decisions=decisions,
                           candidates=candidates, fallback_used=fallback)
