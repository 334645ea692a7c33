"""CODATA-2018 physical constants and the immutable constants registry.

The 2018 edition is pinned so tests are deterministic: c, h and the
electron-volt are exact by definition in that edition, G and the electron
mass are the recommended values.  The Planck length is derived from
c, G and hbar at module load.

Plain-float versions are exported for the numerical modules; the
:class:`ConstantsRegistry` wraps the same values as dimensioned
:class:`~tunnelclock.units.Quantity` objects for the expression checker.
"""

from __future__ import annotations

import math
from types import MappingProxyType
from typing import Iterable, Mapping

from .units import DimensionVector, Quantity

__all__ = [
    "C", "H", "HBAR", "G", "M_E", "EV", "L_P",
    "LENGTH", "MASS", "TIME", "ENERGY", "FREQUENCY", "ENERGY_DENSITY",
    "ConstantsRegistry", "DEFAULT_REGISTRY",
]

# CODATA 2018 (SI); c, h, eV exact by definition.
C = 299792458.0                  # speed of light, m/s
H = 6.62607015e-34               # Planck constant, J*s
HBAR = H / (2.0 * math.pi)       # reduced Planck constant, J*s
G = 6.67430e-11                  # gravitational constant, m^3 kg^-1 s^-2
M_E = 9.1093837015e-31           # electron mass, kg
EV = 1.602176634e-19             # electron volt, J
L_P = math.sqrt(HBAR * G / C**3)  # Planck length, m

# Common dimension vectors.
LENGTH = DimensionVector(m=1)
MASS = DimensionVector(kg=1)
TIME = DimensionVector(s=1)
VELOCITY = DimensionVector(m=1, s=-1)
ENERGY = DimensionVector(kg=1, m=2, s=-2)
FREQUENCY = DimensionVector(s=-1)
ENERGY_DENSITY = DimensionVector(kg=1, m=-1, s=-2)
ACTION = DimensionVector(kg=1, m=2, s=-1)
GRAVITATIONAL = DimensionVector(m=3, kg=-1, s=-2)


class ConstantsRegistry(Mapping[str, Quantity]):
    """Immutable name -> Quantity map.

    ``extended`` returns a new registry with extra bindings (for situational
    values like a mass M or radius r in a checked expression); the original
    is never mutated.
    """

    def __init__(self, entries: Mapping[str, Quantity]):
        self._entries = MappingProxyType(dict(entries))

    def __getitem__(self, name: str) -> Quantity:
        return self._entries[name]

    def __iter__(self) -> Iterable[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def extended(self, bindings: Mapping[str, Quantity]) -> "ConstantsRegistry":
        merged = dict(self._entries)
        merged.update(bindings)
        return ConstantsRegistry(merged)


DEFAULT_REGISTRY = ConstantsRegistry({
    "c": Quantity(C, VELOCITY),
    "h": Quantity(H, ACTION),
    "hbar": Quantity(HBAR, ACTION),
    "G": Quantity(G, GRAVITATIONAL),
    "m_e": Quantity(M_E, MASS),
    "eV": Quantity(EV, ENERGY),
    "l_p": Quantity(L_P, LENGTH),
})
