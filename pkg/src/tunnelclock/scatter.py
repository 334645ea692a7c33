"""1D quantum scattering through piecewise-constant potentials.

Two routes to the transmission probability:

* :func:`transfer_matrix_scatter`, exact for any stack of constant segments
  (the verification oracle for everything downstream), and
* :func:`opaque_transmission`, the single-exponential opaque-barrier form
  T = exp(-2 kappa L), which keeps only the dominant decay factor and feeds
  the tunneling-time algebra.

The asymptotic potential is zero on both sides, so the incident and
transmitted wavevectors coincide and T = |t|^2 without a flux ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .constants import HBAR
from .errors import DegenerateEnergyError, DomainError

__all__ = [
    "PotentialProfile", "ScatteringResult", "UnsupportedProfileError",
    "transfer_matrix_scatter", "transfer_matrix_batch", "opaque_transmission",
]

# Relative closeness of E to a segment height that gets rejected (k would
# vanish and the interface matrices become singular).
_DEGENERACY_RTOL = 1e-14


class UnsupportedProfileError(ValueError):
    """The operation requires a different profile shape (e.g. single segment)."""


@dataclass(frozen=True)
class PotentialProfile:
    """Ordered constant segments (width_m, height_J) plus the particle mass (kg)."""

    segments: tuple[tuple[float, float], ...]
    mass: float

    def __post_init__(self):
        segs = tuple((float(w), float(v)) for w, v in self.segments)
        if not segs:
            raise ValueError("profile needs at least one segment")
        for w, v in segs:
            if not (w > 0.0) or not math.isfinite(w):
                raise ValueError(f"segment width must be positive and finite, got {w}")
            if not math.isfinite(v):
                raise ValueError(f"segment height must be finite, got {v}")
        if not (self.mass > 0.0) or not math.isfinite(self.mass):
            raise ValueError(f"mass must be positive and finite, got {self.mass}")
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "mass", float(self.mass))

    @classmethod
    def rectangular(cls, height: float, width: float, mass: float) -> "PotentialProfile":
        return cls(segments=((width, height),), mass=mass)

    @property
    def total_width(self) -> float:
        return sum(w for w, _ in self.segments)

    def single_segment(self) -> tuple[float, float]:
        if len(self.segments) != 1:
            raise UnsupportedProfileError(
                f"operation requires a single-segment profile, got {len(self.segments)} segments")
        return self.segments[0]


@dataclass(frozen=True)
class ScatteringResult:
    """Complex amplitudes at one energy; probabilities are their squared moduli."""

    energy: float
    t_amp: complex
    r_amp: complex

    @property
    def transmission(self) -> float:
        return abs(self.t_amp) ** 2

    @property
    def reflection(self) -> float:
        return abs(self.r_amp) ** 2

    @property
    def unitarity_defect(self) -> float:
        return abs(self.transmission + self.reflection - 1.0)


def _check_energies(profile: PotentialProfile, energies: np.ndarray) -> None:
    if np.any(energies <= 0.0):
        raise DomainError("incident energy must be positive")
    for _, v in profile.segments:
        scale = np.maximum(np.abs(energies), abs(v))
        if np.any(np.abs(energies - v) <= _DEGENERACY_RTOL * scale):
            raise DegenerateEnergyError(
                f"energy coincides with segment height {v}; perturb the energy grid")


def transfer_matrix_batch(profile: PotentialProfile, energies) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized transfer-matrix amplitudes (t, r) over an energy grid."""
    E = np.ascontiguousarray(energies, dtype=np.float64)
    _check_energies(profile, E)
    widths = np.ascontiguousarray([w for w, _ in profile.segments])
    heights = np.ascontiguousarray([v for _, v in profile.segments])
    return kernels.transfer_matrix_batch(widths, heights, profile.mass, E, HBAR)


def transfer_matrix_scatter(profile: PotentialProfile, energy: float) -> ScatteringResult:
    """Exact scattering amplitudes at one energy.

    Composes a 2x2 complex transfer matrix per segment (wavevector
    sqrt(2m(E-V))/hbar, imaginary under a barrier) with the interface
    matching matrices and extracts the transmission and reflection
    amplitudes.  Flux conservation is verified before returning.
    """
    t, r = transfer_matrix_batch(profile, [energy])
    result = ScatteringResult(energy=float(energy), t_amp=complex(t[0]), r_amp=complex(r[0]))
    if not (result.unitarity_defect < 1e-8):
        raise ArithmeticError(
            f"transfer matrix lost unitarity at E={energy}: defect {result.unitarity_defect:.3e}")
    return result


def opaque_transmission(profile: PotentialProfile, energy: float) -> float:
    """Opaque-barrier transmission T = exp(-2 kappa L) for a single segment.

    Only valid under the barrier (0 < E < V0); kappa = sqrt(2m(V0-E))/hbar.
    """
    width, height = profile.single_segment()
    if not (energy > 0.0):
        raise DomainError("incident energy must be positive")
    if energy >= height:
        raise DomainError(
            f"opaque form needs E below the barrier: E={energy}, V0={height}")
    kappa = math.sqrt(2.0 * profile.mass * (height - energy)) / HBAR
    return math.exp(-2.0 * kappa * width)
