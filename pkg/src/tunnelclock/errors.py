"""Shared exception types.

Numerical routines raise these instead of bare ValueErrors so that callers
(the sweep engine in particular) can turn failures into row-level status
labels without string matching.
"""

import re


class DomainError(ValueError):
    """Input lies outside the mathematical domain of the operation."""


class HorizonError(DomainError):
    """Schwarzschild ratio at or past 1; the dilation factor diverges."""


class DegenerateEnergyError(ValueError):
    """Energy coincides with a segment height; the wavevector vanishes."""


class ConvergenceError(ArithmeticError):
    """Iterative refinement stopped without meeting its error target."""


class DivergenceError(ArithmeticError):
    """Result exceeded a configured ceiling (e.g. tunneling time near the barrier top)."""


def status_label(exc: BaseException) -> str:
    """Kebab-case label for an exception class, used in sweep status columns.

    DomainError -> "domain-error", HorizonError -> "horizon-error".
    """
    name = type(exc).__name__
    return re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower()
