"""tunnelclock: barrier traversal times and the clocks they imply.

Subsystems:

* :mod:`~tunnelclock.units` / :mod:`~tunnelclock.constants`: exact SI
  dimension algebra over rational exponents and the pinned CODATA-2018
  registry.
* :mod:`~tunnelclock.dimparse`: expression parser and dimension-checked
  evaluator for auditing constants algebra.
* :mod:`~tunnelclock.scatter`: exact transfer-matrix scattering through
  piecewise-constant potentials, plus the opaque-barrier transmission.
* :mod:`~tunnelclock.tunneltime`: the traversal-time functional
  hbar * |d ln T / dE|, closed form and finite differences.
* :mod:`~tunnelclock.gravity`: the dilation factor recovered from
  traversal time through a 1/r effective potential, against the
  Schwarzschild reference.
* :mod:`~tunnelclock.orthoclock`: spectral evolution, first-orthogonality
  times, and the minimum-time bound h/(4<E>).
* :mod:`~tunnelclock.bondnet`: toy tensor-network bond accounting and the
  entanglement flux laws.
* :mod:`~tunnelclock.sweep` / :mod:`~tunnelclock.cli`: deterministic
  parameter sweeps and the command-line interface.

Hot kernels run on a compiled Cython extension when available and fall
back to NumPy otherwise; see :func:`tunnelclock.backend_name`.
"""

from ._backend import backend_name
from .constants import DEFAULT_REGISTRY, ConstantsRegistry
from .units import DimensionVector, Quantity

__version__ = "0.1.0"

__all__ = [
    "Quantity", "DimensionVector", "ConstantsRegistry", "DEFAULT_REGISTRY",
    "backend_name", "__version__",
]
