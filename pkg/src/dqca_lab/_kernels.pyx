# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled banded stepping kernel.

Hot loop of the toolkit: t steps of a nearest-neighbour two-component update
cost O(t * window).  The update runs in place on one padded buffer with two
rolling registers holding the previous site's pre-update value, so each step
is a single left-to-right sweep with no temporary arrays.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "compiled"


def step_banded(amps, wm, w0, wp):
    """One banded update; output row j corresponds to input row j-1."""
    return evolve_banded(amps, wm, w0, wp, 1)


def evolve_banded(amps, wm, w0, wp, Py_ssize_t steps):
    """Apply ``steps`` rounds of new[n] = wm@old[n-1] + w0@old[n] + wp@old[n+1].

    Input (N, 2) complex; output (N + 2*steps, 2), window grown by one site
    per side per step.
    """
    a = np.ascontiguousarray(amps, dtype=np.complex128)
    if steps == 0:
        return a.copy()

    cdef Py_ssize_t n = a.shape[0]
    # One pad slot at each buffer end keeps the old[n-1]/old[n+1] reads of the
    # outermost sweep positions in bounds (they read zeros there).
    buf_arr = np.zeros((n + 2 * steps + 2, 2), dtype=np.complex128)
    buf_arr[steps + 1 : steps + 1 + n] = a

    cdef double complex[:, ::1] buf = buf_arr
    cdef double complex[:, ::1] m = np.ascontiguousarray(wm, dtype=np.complex128)
    cdef double complex[:, ::1] z = np.ascontiguousarray(w0, dtype=np.complex128)
    cdef double complex[:, ::1] p = np.ascontiguousarray(wp, dtype=np.complex128)

    cdef double complex m00 = m[0, 0], m01 = m[0, 1], m10 = m[1, 0], m11 = m[1, 1]
    cdef double complex z00 = z[0, 0], z01 = z[0, 1], z10 = z[1, 0], z11 = z[1, 1]
    cdef double complex p00 = p[0, 0], p01 = p[0, 1], p10 = p[1, 0], p11 = p[1, 1]

    cdef Py_ssize_t lo = steps + 1
    cdef Py_ssize_t hi = steps + 1 + n
    cdef Py_ssize_t k, i
    cdef double complex pr, pl, cr, cl, nr, nl

    for k in range(steps):
        lo -= 1
        hi += 1
        pr = 0
        pl = 0
        for i in range(lo, hi):
            cr = buf[i, 0]
            cl = buf[i, 1]
            nr = buf[i + 1, 0]
            nl = buf[i + 1, 1]
            buf[i, 0] = m00 * pr + m01 * pl + z00 * cr + z01 * cl + p00 * nr + p01 * nl
            buf[i, 1] = m10 * pr + m11 * pl + z10 * cr + z11 * cl + p10 * nr + p11 * nl
            pr = cr
            pl = cl

    return buf_arr[1:-1]
