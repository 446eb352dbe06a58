"""Gaussian-weighted component fusion and Hann overlap-add assembly."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np
from scipy.signal.windows import hann

from .errors import (
    ConfigError,
    NoAcceptedComponents,
    TraceTooShort,
    WindowSpacingError,
)
from .ingest import RawTrace
from .preprocess import PULSE_BAND, DEFAULT_LAMBDA, bandpass, detrend
from .selection import (
    DEFAULT_SEC_CHN,
    SIGMA_INIT,
    ReferenceHrState,
    select_candidates,
    update_reference,
)
from .ssa import decompose, default_window_length


@dataclass(frozen=True)
class GaussianWeightParams:
    """Mean (reference HR) and spread of the component weight function, Hz."""

    mu: float
    sigma: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")


def gaussian_weight(f: float, params: GaussianWeightParams) -> float:
    """Gaussian density w(f) = exp(-(f-mu)^2 / 2 sigma^2) / (sqrt(2 pi) sigma)."""
    z = (f - params.mu) / params.sigma
    return float(np.exp(-0.5 * z * z) / (np.sqrt(2.0 * np.pi) * params.sigma))


def fuse_window(accepted, params: GaussianWeightParams) -> np.ndarray:
    """Weighted average of component series with scalar weights w(f_p).

    Weights are evaluated in log space relative to the best-matching
    component, so far-off candidates underflow to zero weight instead of
    producing 0/0.  The normalization makes the result invariant to
    uniform weight scaling.
    """
    accepted = list(accepted)
    if not accepted:
        raise NoAcceptedComponents("fuse_window needs at least one component")
    freqs = np.array([c.dominant_freq for c in accepted])
    exponents = -0.5 * ((freqs - params.mu) / params.sigma) ** 2
    w = np.exp(exponents - exponents.max())
    stack = np.vstack([c.series for c in accepted])
    if stack.shape[0] != len(w) or len({len(c.series) for c in accepted}) != 1:
        raise ValueError("all component series must have the same length")
    return (w[:, None] * stack).sum(axis=0) / w.sum()


def overlap_add(windows, window_len: int, hop: int | None = None) -> np.ndarray:
    """Sum Hann-tapered windows at their start offsets.

    ``windows`` is a time-ordered list of (start_index, vector) pairs
    spaced exactly ``hop`` apart with hop = window_len / 2.  The periodic
    Hann window at 50% hop satisfies constant overlap-add with sum 1.0,
    so the interior of a constant stream reconstructs the constant.
    """
    if hop is None:
        hop = window_len // 2
    if 2 * hop != window_len:
        raise WindowSpacingError(f"hop must be window_len/2, got {hop} vs {window_len}")
    windows = list(windows)
    if not windows:
        raise WindowSpacingError("no windows to assemble")
    starts = [s for s, _ in windows]
    for a, b in zip(starts, starts[1:]):
        if b - a != hop:
            raise WindowSpacingError(f"window starts {a} and {b} are not {hop} apart")
    taper = hann(window_len, sym=False)
    out = np.zeros(starts[-1] + window_len)
    for start, vec in windows:
        vec = np.asarray(vec, dtype=float)
        if vec.size != window_len:
            raise WindowSpacingError(
                f"window at {start} has length {vec.size}, expected {window_len}")
        out[start:start + window_len] += taper * vec
    return out


@dataclass(frozen=True)
class WindowRecord:
    """Per-analysis-window metadata emitted alongside the pulse wave."""

    t_start: float
    f_r: float
    sigma_fr: float
    n_accepted: int
    fallback: bool
    emitted: bool

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class PulseWave:
    """Final fused pulse signal plus per-window pipeline metadata."""

    samples: np.ndarray
    fs: float
    window_flags: tuple[WindowRecord, ...] = ()

    def __len__(self):
        return self.samples.shape[0]


@dataclass(frozen=True)
class PipelineConfig:
    window_s: float = 10.0
    step_s: float = 1.0
    ssa_window: int | None = None  # None: T/3 clamped to [2*fs, T/2]
    sec_chn: int = DEFAULT_SEC_CHN
    lam: float = DEFAULT_LAMBDA
    band: tuple[float, float] = PULSE_BAND
    sigma_init: float = SIGMA_INIT


def run_pipeline(trace: RawTrace, config: PipelineConfig = PipelineConfig()) -> PulseWave:
    """Extract the pulse wave from a raw trace.

    Every ``step_s`` a 10 s green-channel window is detrended, bandpassed
    and used to advance the reference HR.  Windows starting on half-window
    boundaries are additionally SSA-decomposed, mask-selected, fused with
    Gaussian weights centered on the reference HR, and assembled by Hann
    overlap-add at 50% hop.  Analysis runs at the fine step purely for
    reference-HR tracking; emitting every window would break the
    constant-overlap-add normalization.
    """
    fs = trace.fs
    win = int(round(config.window_s * fs))
    step = int(round(config.step_s * fs))
    hop = win // 2
    if win % 2 or step < 1:
        raise ConfigError("window must be an even number of samples and step >= 1")
    if hop % step:
        raise ConfigError(f"step ({step}) must divide the half-window hop ({hop})")
    T = len(trace)
    if T < win:
        raise TraceTooShort(f"trace has {T} samples, need at least {win}")

    green = trace.green()
    state = ReferenceHrState(sigma_fr=config.sigma_init)
    emitted = []
    records = []
    for start in range(0, T - win + 1, step):
        seg = bandpass(detrend(green[start:start + win], config.lam), fs,
                       config.band[0], config.band[1])
        state = update_reference(state, seg, fs)
        emit = start % hop == 0
        n_accepted = 0
        fallback = False
        if emit:
            L = config.ssa_window or default_window_length(win, fs)
            dec = decompose(seg, L, max_components=config.sec_chn)
            sel = select_candidates(dec, fs, state, sec_chn=config.sec_chn)
            params = GaussianWeightParams(mu=state.f_r, sigma=state.sigma_fr)
            emitted.append((start, fuse_window(sel.accepted, params)))
            n_accepted = len(sel.accepted)
            fallback = sel.fallback_used
        records.append(WindowRecord(
            t_start=start / fs, f_r=state.f_r, sigma_fr=state.sigma_fr,
            n_accepted=n_accepted, fallback=fallback, emitted=emit))
    samples = overlap_add(emitted, win, hop)
    return PulseWave(samples=samples, fs=fs, window_flags=tuple(records))
