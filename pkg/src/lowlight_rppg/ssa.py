"""Singular spectrum analysis: Hankel embedding, SVD, diagonal averaging."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import hankel

from .errors import DecompositionFailure, InvalidWindowLength, NonFiniteInput

# Directions with singular values below this fraction of the largest are
# numerically zero and discarded.
SV_CUTOFF = 1e-12


@dataclass(frozen=True)
class SsaDecomposition:
    """Elementary reconstructed components of a 1-D series.

    ``components`` has shape (n, T), one reconstructed series per row,
    ordered by descending singular value.
    """

    components: np.ndarray
    singular_values: np.ndarray
    window_length: int
    source_length: int

    def __len__(self):
        return len(self.singular_values)


def validate_window_length(L: int, T: int) -> None:
    # L = T/2 is admitted for even T as a boundary convenience.
    if not (2 <= L and 2 * L <= T):
        raise InvalidWindowLength(f"need 2 <= L <= T/2, got L={L}, T={T}")


def default_window_length(T: int, fs: float) -> int:
    """T/3, clamped to [2*fs, T/2] so a window spans at least 2 seconds."""
    lo = int(round(2 * fs))
    hi = T // 2
    return int(np.clip(T // 3, min(lo, hi), hi))


def hankel_embed(series, L: int) -> np.ndarray:
    """L x K trajectory matrix, X[i, j] = series[i + j], K = T - L + 1."""
    x = np.asarray(series, dtype=float)
    validate_window_length(L, x.size)
    return hankel(x[:L], x[L - 1:])


def svd_components(X) -> list[tuple[float, np.ndarray, np.ndarray]]:
    """Singular triples (sigma_i, u_i, v_i) of X, descending sigma.

    Triples with sigma below ``SV_CUTOFF`` times the largest singular
    value are dropped.  The SVD is taken on X directly rather than on
    X X' for robustness at small singular values.
    """
    X = np.asarray(X, dtype=float)
    if not np.all(np.isfinite(X)):
        raise NonFiniteInput("svd_components input contains NaN or inf")
    try:
        u, s, vt = np.linalg.svd(X, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise DecompositionFailure(str(exc)) from exc
    if s.size == 0 or s[0] == 0.0:
        return []
    keep = s > SV_CUTOFF * s[0]
    return [(s[i], u[:, i], vt[i]) for i in np.flatnonzero(keep)]


def diagonal_average(Xi) -> np.ndarray:
    """Average the anti-diagonals of an L x K matrix into a length
    L + K - 1 series (orthogonal projection onto Hankel matrices
    followed by de-embedding)."""
    Xi = np.asarray(Xi, dtype=float)
    if not np.all(np.isfinite(Xi)):
        raise NonFiniteInput("diagonal_average input contains NaN or inf")
    L, K = Xi.shape
    out = np.zeros(L + K - 1)
    for i in range(L):
        out[i:i + K] += Xi[i]
    counts = np.convolve(np.ones(L), np.ones(K))
    return out / counts


def decompose(series, L: int, max_components: int) -> SsaDecomposition:
    """Top ``max_components`` elementary reconstructed components.

    Each component is the diagonal average of a rank-1 term
    sigma_p * u_p v_p'; for rank-1 matrices the anti-diagonal sums are a
    convolution, so each component costs O(T log T).
    """
    x = np.asarray(series, dtype=float)
    validate_window_length(L, x.size)
    if max_components < 1:
        raise ValueError("max_components must be >= 1")
    triples = svd_components(hankel_embed(x, L))[:max_components]
    K = x.size - L + 1
    counts = np.convolve(np.ones(L), np.ones(K))
    comps = np.array([np.convolve(s * u, v) / counts for s, u, v in triples])
    if comps.size == 0:
        comps = np.empty((0, x.size))
    return SsaDecomposition(
        components=comps,
        singular_values=np.array([s for s, _, _ in triples]),
        window_length=L,
        source_length=x.size,
    )
