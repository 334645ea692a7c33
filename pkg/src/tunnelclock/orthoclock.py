"""Quantum-speed-limit engine: spectral evolution and orthogonalization times.

A state is given spectrally as levels (E_n, c_n); its survival amplitude is

    <psi_0|psi_t> = sum_n |c_n|^2 exp(-i E_n t / hbar)

which depends only on the occupation weights.  The minimum-time bound for
reaching an orthogonal state is h/(4<E>) with the ground level shifted to
zero energy, and the matching maximal update rate is 2<E>/(pi hbar); both
are computed by :func:`ml_bound` and checked against the measured first
orthogonalization time.

Exact zero overlap exists only for commensurate spectra, so "orthogonal"
means |overlap| at or below a tolerance (default 1e-6) and the search
reports None when the state never gets that close within its scan window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._backend import kernels
from .constants import H, HBAR

__all__ = [
    "MAX_LEVELS", "DegenerateStateError", "SpectralState", "MLBound",
    "overlap", "first_orthogonal_time", "ml_bound",
]

MAX_LEVELS = 64

#: Grid resolution of the orthogonality scan.
_SCAN_POINTS = 4096


class DegenerateStateError(ValueError):
    """The state has zero mean energy above the ground level."""


@dataclass(frozen=True)
class SpectralState:
    """Energy levels with complex amplitudes, at most :data:`MAX_LEVELS` of them.

    Levels are stored sorted by energy with the ground level shifted to zero
    (the bound's convention); amplitudes must be normalized to unit total
    probability within 1e-12.  Duplicate energies are allowed.
    """

    energies: np.ndarray    # float64, sorted ascending, min exactly 0
    amplitudes: np.ndarray  # complex128

    def __init__(self, energies: Sequence[float], amplitudes: Sequence[complex]):
        e = np.asarray(energies, dtype=np.float64)
        c = np.asarray(amplitudes, dtype=np.complex128)
        if e.ndim != 1 or e.shape != c.shape:
            raise ValueError("energies and amplitudes must be 1-D and the same length")
        if not 1 <= e.size <= MAX_LEVELS:
            raise ValueError(f"need between 1 and {MAX_LEVELS} levels, got {e.size}")
        if not np.all(np.isfinite(e)):
            raise ValueError("energies must be finite")
        total = float(np.sum(np.abs(c) ** 2))
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"amplitudes are not normalized: sum |c|^2 = {total!r}")
        order = np.argsort(e, kind="stable")
        e = e[order]
        e = e - e[0]
        object.__setattr__(self, "energies", e)
        object.__setattr__(self, "amplitudes", c[order])

    @classmethod
    def normalized(cls, energies: Sequence[float], amplitudes: Sequence[complex]) -> "SpectralState":
        """Build a state, rescaling the amplitudes to unit norm first."""
        c = np.asarray(amplitudes, dtype=np.complex128)
        norm = math.sqrt(float(np.sum(np.abs(c) ** 2)))
        if norm == 0.0:
            raise ValueError("cannot normalize a zero state")
        return cls(energies, c / norm)

    @property
    def weights(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def mean_energy(self) -> float:
        return float(np.dot(self.weights, self.energies))

    def distinct_levels(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct energies with aggregated weights."""
        distinct, inverse = np.unique(self.energies, return_inverse=True)
        merged = np.zeros(distinct.size)
        np.add.at(merged, inverse, self.weights)
        return distinct, merged


def overlap(state: SpectralState, t: float) -> complex:
    """Survival amplitude <psi_0|psi_t> at time ``t``."""
    return complex(np.sum(state.weights * np.exp(-1.0j * state.energies * t / HBAR)))


def _overlap_abs(state: SpectralState, times: np.ndarray) -> np.ndarray:
    return kernels.overlap_abs_scan(
        np.ascontiguousarray(state.weights),
        np.ascontiguousarray(state.energies),
        np.ascontiguousarray(times, dtype=np.float64),
        HBAR,
    )


def _overlap_sq_slope(state: SpectralState, t: float) -> float:
    """d|overlap|^2/dt, analytic; changes sign at an overlap minimum."""
    phases = np.exp(-1.0j * state.energies * t / HBAR)
    ov = np.sum(state.weights * phases)
    d_ov = np.sum(state.weights * (-1.0j * state.energies / HBAR) * phases)
    return float(2.0 * (np.conj(ov) * d_ov).real)


def _bisect_crossing(state: SpectralState, tol: float, lo: float, hi: float) -> float:
    """First t in [lo, hi] with |overlap| <= tol, given |overlap(lo)| > tol >= |overlap(hi)|."""
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if abs(overlap(state, mid)) > tol:
            lo = mid
        else:
            hi = mid
    return hi


def first_orthogonal_time(state: SpectralState, tol: float = 1e-6) -> Optional[float]:
    """Earliest time at which |overlap| falls to ``tol``, or None.

    Single-gap spectra are solved in closed form: the overlap magnitude
    beats between 1 and |w0 - w1|, so the orthogonal time is half the beat
    period whenever that floor is within tolerance.

    Everything else is scanned on a 4096-point grid over
    [0, 4 pi hbar / dE_min] (dE_min the smallest nonzero level gap, beyond
    which quasi-periodicity makes "first" ill-defined).  The magnitude
    touches zero in dips far narrower than the grid, so every grid-scale
    local minimum is sharpened by bisecting the analytic slope of
    |overlap|^2; the earliest dip reaching ``tol`` is then resolved to the
    crossing time by bisection.  None means no dip reaches ``tol`` inside
    the window at grid resolution.
    """
    if not 0.0 < tol <= 1e-3:
        raise ValueError(f"tol must be in (0, 1e-3], got {tol}")
    distinct, weights = state.distinct_levels()
    if distinct.size < 2:
        return None  # a single level only ever changes global phase

    if distinct.size == 2:
        w0, w1 = float(weights[0]), float(weights[1])
        gap = float(distinct[1] - distinct[0])
        if abs(w0 - w1) > tol:
            return None
        return math.pi * HBAR / gap

    gaps = np.diff(distinct)
    window = 4.0 * math.pi * HBAR / float(np.min(gaps))
    times = np.linspace(0.0, window, _SCAN_POINTS)
    magnitude = _overlap_abs(state, times)

    # Wide dips: some grid point already sits at or below tol.
    below = np.nonzero(magnitude <= tol)[0]
    if below.size:
        j = int(below[0])
        return _bisect_crossing(state, tol, float(times[j - 1]), float(times[j]))

    # Narrow dips: refine each interior local minimum, in time order.
    interior = magnitude[1:-1]
    is_min = (interior < magnitude[:-2]) & (interior <= magnitude[2:])
    for i in np.nonzero(is_min)[0] + 1:
        lo, hi = float(times[i - 1]), float(times[i + 1])
        if _overlap_sq_slope(state, lo) < 0.0 < _overlap_sq_slope(state, hi):
            for _ in range(100):
                mid = 0.5 * (lo + hi)
                if mid == lo or mid == hi:
                    break
                if _overlap_sq_slope(state, mid) < 0.0:
                    lo = mid
                else:
                    hi = mid
            minimizer = 0.5 * (lo + hi)
        else:
            minimizer = float(times[i])
        if abs(overlap(state, minimizer)) <= tol:
            return _bisect_crossing(state, tol, float(times[i - 1]), minimizer)
    return None


@dataclass(frozen=True)
class MLBound:
    """Minimum orthogonalization time and the matching maximal update rate."""

    t_min: float   # h / (4 <E>), seconds
    rate: float    # 2 <E> / (pi hbar), orthogonal states per second


def ml_bound(state: SpectralState) -> MLBound:
    """Speed-limit bound for a state with positive mean energy above ground.

    t_min * rate is the pure number h/(2 pi hbar) = 1: the rate is exactly
    the reciprocal of the minimum orthogonalization time.
    """
    mean = state.mean_energy
    if mean <= 0.0:
        raise DegenerateStateError("mean energy above the ground level is zero")
    return MLBound(t_min=H / (4.0 * mean), rate=2.0 * mean / (math.pi * HBAR))
