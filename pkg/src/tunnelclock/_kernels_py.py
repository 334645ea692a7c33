"""Pure-NumPy kernels: the fallback backend when the compiled extension is absent.

Both backends implement the same two hot loops with identical math:

* ``transfer_matrix_batch`` composes the 2x2 complex transfer matrix of a
  piecewise-constant potential for a whole energy grid;
* ``overlap_abs_scan`` evaluates |sum_n w_n exp(-i E_n t / hbar)| on a time
  grid.

Wavevectors under a barrier are assembled explicitly as i*sqrt(...) from a
real square root, never via a complex sqrt, so the branch (Im >= 0) does not
depend on any library convention.
"""

import numpy as np

NAME = "numpy"


def transfer_matrix_batch(widths, heights, mass, energies, hbar):
    """Transmission and reflection amplitudes for each energy.

    widths, heights: 1-D arrays describing the segments (meters, joules);
    mass in kg; energies a 1-D array of incident energies (joules), each
    positive and distinct from every segment height.  Returns (t, r) as
    complex arrays.
    """
    E = np.asarray(energies, dtype=np.float64)
    widths = np.asarray(widths, dtype=np.float64)
    heights = np.asarray(heights, dtype=np.float64)

    k_lead = np.sqrt(2.0 * mass * E) / hbar + 0.0j

    # Running transfer matrix, vectorized over the energy grid.
    m00 = np.ones_like(k_lead)
    m01 = np.zeros_like(k_lead)
    m10 = np.zeros_like(k_lead)
    m11 = np.ones_like(k_lead)
    k_prev = k_lead

    n_seg = widths.shape[0]
    for j in range(n_seg):
        disc = 2.0 * mass * (E - heights[j])
        k = np.where(disc >= 0.0,
                     np.sqrt(np.abs(disc)) + 0.0j,
                     1.0j * np.sqrt(np.abs(disc))) / hbar

        ratio = k_prev / k
        a = 0.5 * (1.0 + ratio)
        b = 0.5 * (1.0 - ratio)
        n00 = a * m00 + b * m10
        n01 = a * m01 + b * m11
        n10 = b * m00 + a * m10
        n11 = b * m01 + a * m11

        # Propagation across the segment: diag(e^{ikw}, e^{-ikw}).
        phase = 1.0j * k * widths[j]
        p_plus = np.exp(phase)
        p_minus = np.exp(-phase)
        m00 = p_plus * n00
        m01 = p_plus * n01
        m10 = p_minus * n10
        m11 = p_minus * n11
        k_prev = k

    ratio = k_prev / k_lead
    a = 0.5 * (1.0 + ratio)
    b = 0.5 * (1.0 - ratio)
    f10 = b * m00 + a * m10
    f11 = b * m01 + a * m11

    # det(M) = 1: interface determinants telescope (k0/k1 * k1/k2 * ... = 1,
    # equal leads) and propagation blocks are unimodular, so t = 1/f11.
    # Computing f00 + f01*r instead would cancel two e^{+kappa L} terms.
    r = -f10 / f11
    t = 1.0 / f11
    return t, r


def overlap_abs_scan(weights, energies, times, hbar):
    """|<psi_0|psi_t>| on a time grid for a spectral state.

    weights are the |c_n|^2 occupation probabilities, energies the level
    energies (joules), times in seconds.  Returns a float array.
    """
    w = np.asarray(weights, dtype=np.float64)
    E = np.asarray(energies, dtype=np.float64)
    t = np.asarray(times, dtype=np.float64)
    phases = np.exp(-1.0j * np.outer(t, E) / hbar)
    return np.abs(phases @ w)
