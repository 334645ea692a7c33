"""Gravitational time dilation recovered from barrier-traversal time.

The construction: quantum-state updates near a mass M tunnel through an
effective potential b*M*c^2/r over a causal correlation distance d0.  The
traversal time, scaled by A0 = c/(sqrt(2)*d0), reproduces the Schwarzschild
dilation factor 1/sqrt(1 - 2GM/(r c^2)) exactly when b takes its canonical
value 2*G*E0/c^4.  :func:`dilation_gr` implements the relativity textbook
formula independently so the equivalence can be tested rather than assumed.

Defaults follow the normalization that makes A0 = 1/s: d0 = c/sqrt(2) * 1 s
(about 2.11985e8 m), and E0 at the Planck-scale value l_p*c^4/(2G) so the
canonical b equals the Planck length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .constants import C, G, HBAR, L_P
from .errors import DomainError, HorizonError

__all__ = [
    "D0_CAUSAL", "E0_PLANCK",
    "DilationParams", "DilationResult", "CollapseTransmission", "DerivedConstants",
    "collapse_transmission", "dilation_tunneling", "dilation_gr", "derive_constants",
]

#: Causal correlation distance making A0 exactly 1/s: c/sqrt(2) times one second.
D0_CAUSAL = C / math.sqrt(2.0)

#: Kinetic zero-point energy when the flux proportionality length is the Planck length.
E0_PLANCK = L_P * C**4 / (2.0 * G)


@dataclass(frozen=True)
class DilationParams:
    """Inputs for the dilation-from-traversal construction.

    ``b`` defaults to the canonical 2*G*energy0/c^4 (the value that makes
    the equivalence with the Schwarzschild factor exact); ``a`` is the raw
    potential proportionality the 1/r flux law absorbs into b, kept only as
    a documentation field.  The test rest mass is tied to energy0 by
    m0 = energy0/c^2, by construction.
    """

    mass: float                    # M, kg
    radius: float                  # r, m
    d0: float = D0_CAUSAL          # causal correlation distance, m
    energy0: float = E0_PLANCK     # E0, J
    b: Optional[float] = None      # flux proportionality length, m
    a: Optional[float] = None      # documentation only; absorbed into b

    def __post_init__(self):
        if self.mass < 0.0:
            raise DomainError(f"mass must be nonnegative, got {self.mass}")
        if not (self.radius > 0.0):
            raise DomainError(f"radius must be positive, got {self.radius}")
        if not (self.d0 > 0.0):
            raise DomainError(f"d0 must be positive, got {self.d0}")
        if not (self.energy0 > 0.0):
            raise DomainError(f"energy0 must be positive, got {self.energy0}")

    @property
    def m0(self) -> float:
        """Test rest mass; energy0 = m0 c^2 holds exactly."""
        return self.energy0 / C**2

    @property
    def b_effective(self) -> float:
        return 2.0 * G * self.energy0 / C**4 if self.b is None else self.b

    @property
    def schwarzschild_ratio(self) -> float:
        """x = 2GM/(r c^2), computed from M and r alone."""
        return 2.0 * G * self.mass / (self.radius * C**2)

    @property
    def potential_ratio(self) -> float:
        """u = b M c^2 / (r E0), the barrier height in units of E0 (equals x for canonical b)."""
        return self.b_effective * self.mass * C**2 / (self.radius * self.energy0)


@dataclass(frozen=True)
class CollapseTransmission:
    """Transmission coefficient for a state-collapse update.

    ``tunneling`` is False in the propagating regime (effective potential
    below E0, i.e. outside the horizon for canonical constants), where the
    exponent turns imaginary and the magnitude clamps to 1.
    """

    value: float
    tunneling: bool


@dataclass(frozen=True)
class DilationResult:
    schwarzschild_ratio: float   # x = 2GM/(r c^2)
    traversal_time: float        # t_T, seconds
    rate_scale: float            # A0, 1/s
    dilation_factor: float       # delta_t_min = A0 * t_T


def collapse_transmission(params: DilationParams) -> CollapseTransmission:
    """T_c = exp(-2 d0 sqrt(2 m0 (b M c^2 / r - E0)) / hbar).

    The 1/r flux law replaces the raw potential a*M*c^2 with b*M*c^2/r.
    When that effective potential falls below E0 there is no barrier to
    tunnel through; the state propagates freely and the magnitude is 1.

    At the barrier top (the horizon, for canonical constants) the exponent
    is algebraically zero; a 1e-12 relative band around it is snapped to
    exactly zero because sqrt would otherwise amplify float rounding of the
    potential into a wildly wrong exponent.
    """
    barrier = params.b_effective * params.mass * C**2 / params.radius
    rel_gap = barrier / params.energy0 - 1.0
    if rel_gap < -1e-12:
        return CollapseTransmission(value=1.0, tunneling=False)
    if rel_gap <= 1e-12:
        return CollapseTransmission(value=1.0, tunneling=True)
    gap = rel_gap * params.energy0
    exponent = 2.0 * params.d0 * math.sqrt(2.0 * params.m0 * gap) / HBAR
    return CollapseTransmission(value=math.exp(-exponent), tunneling=True)


def dilation_tunneling(params: DilationParams) -> DilationResult:
    """Dilation factor via the traversal-time route.

    t_T = 1 / |sqrt(c^2/(2 d0^2) * (1 - u))| with u = b M c^2 / (r E0);
    the absolute value drops the complex unit that appears when the state
    propagates instead of tunnels.  delta_t_min = A0 * t_T with
    A0 = sqrt(c^2 / (2 d0^2)).
    """
    u = params.potential_ratio
    if u >= 1.0:
        raise HorizonError(
            f"effective potential ratio {u} >= 1: at or inside the horizon, dilation diverges")
    rate_scale = C / (math.sqrt(2.0) * params.d0)
    traversal = 1.0 / (rate_scale * math.sqrt(1.0 - u))
    return DilationResult(
        schwarzschild_ratio=params.schwarzschild_ratio,
        traversal_time=traversal,
        rate_scale=rate_scale,
        dilation_factor=rate_scale * traversal,
    )


def dilation_gr(mass: float, radius: float) -> float:
    """Reference Schwarzschild dilation 1/sqrt(1 - 2GM/(r c^2)), independent of the tunneling path."""
    if mass < 0.0:
        raise DomainError(f"mass must be nonnegative, got {mass}")
    if not (radius > 0.0):
        raise DomainError(f"radius must be positive, got {radius}")
    x = 2.0 * G * mass / (radius * C**2)
    if x >= 1.0:
        raise HorizonError(f"2GM/(rc^2) = {x} >= 1: at or inside the horizon")
    return 1.0 / math.sqrt(1.0 - x)


@dataclass(frozen=True)
class DerivedConstants:
    rate_scale: float        # A0, 1/s
    d0: float                # m
    b: float                 # m
    energy0: float           # E0 = b c^4 / (2G), J
    m0: float                # E0 / c^2, kg
    rho_vacuum: float        # E0 / b^3, J/m^3
    rho_vacuum_closed: float  # c^7 / (2 G^2 hbar), J/m^3


def derive_constants(b: float = L_P, d0: float = D0_CAUSAL) -> DerivedConstants:
    """The constants fixed by a choice of flux length b and causal distance d0.

    rho_vacuum is the density E0/b^3 from the derivation; the closed form
    c^7/(2 G^2 hbar) is reported alongside, and the two agree identically
    when b is the Planck length.
    """
    if not (b > 0.0):
        raise DomainError(f"b must be positive, got {b}")
    if not (d0 > 0.0):
        raise DomainError(f"d0 must be positive, got {d0}")
    energy0 = b * C**4 / (2.0 * G)
    return DerivedConstants(
        rate_scale=C / (math.sqrt(2.0) * d0),
        d0=d0,
        b=b,
        energy0=energy0,
        m0=energy0 / C**2,
        rho_vacuum=energy0 / b**3,
        rho_vacuum_closed=C**7 / (2.0 * G**2 * HBAR),
    )
