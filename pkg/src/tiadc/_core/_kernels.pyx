# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.

Every arithmetic step mirrors ``_fallback.py`` operation for operation so
both backends produce bit-identical output. Build without FP contraction.
"""

from libc.math cimport floor


def ddsm_run(double x_in, const unsigned char[:] dither, double lsb,
             const double[:] coeffs, double[:] errors, long levels,
             double step, double[:] out):
    cdef Py_ssize_t n, k
    cdef Py_ssize_t count = out.shape[0]
    cdef Py_ssize_t order = coeffs.shape[0]
    cdef double half = (levels - 1) * step / 2.0
    cdef double v, y
    cdef long j
    with nogil:
        for n in range(count):
            v = x_in + dither[n] * lsb
            for k in range(order):
                v = v + coeffs[k] * errors[k]
            j = <long>floor((v + half) / step + 0.5)
            if j < 0:
                j = 0
            elif j > levels - 1:
                j = levels - 1
            y = j * step - half
            for k in range(order - 1, 0, -1):
                errors[k] = errors[k - 1]
            if order > 0:
                errors[0] = y - v
            out[n] = y


def ds2_run(const double[:] x, double[:] out, double[:] state, long levels,
            double full_scale):
    cdef Py_ssize_t n
    cdef Py_ssize_t count = x.shape[0]
    cdef double step = 2.0 * full_scale / (levels - 1)
    cdef double a1 = state[0]
    cdef double a2 = state[1]
    cdef double u = state[2]
    cdef double v, y
    cdef long j
    cdef long saturated = 0
    with nogil:
        for n in range(count):
            a1 = a1 + u
            a2 = a2 + a1
            v = x[n] + a1 + a2
            j = <long>floor((v + full_scale) / step + 0.5)
            if j < 0:
                j = 0
                saturated += 1
            elif j > levels - 1:
                j = levels - 1
                saturated += 1
            y = j * step - full_scale
            out[n] = y
            u = x[n] - y
    state[0] = a1
    state[1] = a2
    state[2] = u
    return saturated
