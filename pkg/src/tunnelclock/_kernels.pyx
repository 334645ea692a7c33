# cython: language_level=3
"""Compiled kernels: transfer-matrix composition and overlap scans.

Same math as the NumPy fallback in _kernels_py; see that module for the
contract.  Complex values under a barrier are built as i*sqrt(...) from a
real square root, fixing the branch to Im >= 0 without relying on a complex
sqrt implementation.
"""

import numpy as np

from libc.math cimport cos, exp, fabs, hypot, sin, sqrt

NAME = "cython"


cdef inline double complex _segment_wavevector(double disc, double hbar) noexcept nogil:
    if disc >= 0.0:
        return sqrt(disc) / hbar
    return 1j * (sqrt(-disc) / hbar)


cdef inline double complex _cexp_i(double complex z) noexcept nogil:
    # e^{i z} for complex z = x + iy: e^{-y} (cos x + i sin x)
    cdef double x = z.real
    cdef double y = z.imag
    cdef double mag = exp(-y)
    return mag * cos(x) + 1j * (mag * sin(x))


def transfer_matrix_batch(double[::1] widths, double[::1] heights, double mass,
                          double[::1] energies, double hbar):
    cdef Py_ssize_t n_e = energies.shape[0]
    cdef Py_ssize_t n_seg = widths.shape[0]
    t_out = np.empty(n_e, dtype=np.complex128)
    r_out = np.empty(n_e, dtype=np.complex128)
    cdef double complex[::1] t_view = t_out
    cdef double complex[::1] r_view = r_out

    cdef Py_ssize_t i, j
    cdef double e
    cdef double complex k_lead, k_prev, k, ratio, a, b
    cdef double complex m00, m01, m10, m11, n00, n01, n10, n11
    cdef double complex p_plus, p_minus, r, t

    with nogil:
        for i in range(n_e):
            e = energies[i]
            k_lead = sqrt(2.0 * mass * e) / hbar
            m00 = 1.0
            m01 = 0.0
            m10 = 0.0
            m11 = 1.0
            k_prev = k_lead
            for j in range(n_seg):
                k = _segment_wavevector(2.0 * mass * (e - heights[j]), hbar)
                ratio = k_prev / k
                a = 0.5 * (1.0 + ratio)
                b = 0.5 * (1.0 - ratio)
                n00 = a * m00 + b * m10
                n01 = a * m01 + b * m11
                n10 = b * m00 + a * m10
                n11 = b * m01 + a * m11
                p_plus = _cexp_i(k * widths[j])
                p_minus = _cexp_i(-k * widths[j])
                m00 = p_plus * n00
                m01 = p_plus * n01
                m10 = p_minus * n10
                m11 = p_minus * n11
                k_prev = k
            ratio = k_prev / k_lead
            a = 0.5 * (1.0 + ratio)
            b = 0.5 * (1.0 - ratio)
            n10 = b * m00 + a * m10
            n11 = b * m01 + a * m11
            # det(M) = 1 (interface determinants telescope, equal leads;
            # propagation blocks unimodular), so t = 1/M11 with no
            # cancellation of e^{+kappa L} terms.
            r = -n10 / n11
            t = 1.0 / n11
            t_view[i] = t
            r_view[i] = r

    return t_out, r_out


def overlap_abs_scan(double[::1] weights, double[::1] energies,
                     double[::1] times, double hbar):
    cdef Py_ssize_t n_t = times.shape[0]
    cdef Py_ssize_t n_lvl = weights.shape[0]
    out = np.empty(n_t, dtype=np.float64)
    cdef double[::1] out_view = out

    cdef Py_ssize_t i, n
    cdef double re_acc, im_acc, phase

    with nogil:
        for i in range(n_t):
            re_acc = 0.0
            im_acc = 0.0
            for n in range(n_lvl):
                phase = -energies[n] * times[i] / hbar
                re_acc += weights[n] * cos(phase)
                im_acc += weights[n] * sin(phase)
            out_view[i] = hypot(re_acc, im_acc)

    return out
