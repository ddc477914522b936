# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""OpenMP-parallel in-place gate kernels on a dense amplitude array.

Bit convention: qubit k is bit k of the amplitude index (qubit 0 is the
least-significant bit). Two-qubit matrices are indexed by
j = bit(target0) + 2*bit(target1).
"""

from cython.parallel cimport prange

ctypedef double complex cplx

NAME = "compiled"


def apply_1q(cplx[::1] amps, const cplx[:, :] mat, int target, int threads):
    cdef Py_ssize_t half = amps.shape[0] >> 1
    cdef Py_ssize_t stride = (<Py_ssize_t> 1) << target
    cdef Py_ssize_t mask = stride - 1
    cdef cplx m00 = mat[0, 0], m01 = mat[0, 1]
    cdef cplx m10 = mat[1, 0], m11 = mat[1, 1]
    cdef Py_ssize_t g, i0, i1
    cdef cplx a0, a1
    for g in prange(half, nogil=True, num_threads=threads, schedule="static"):
        i0 = ((g >> target) << (target + 1)) | (g & mask)
        i1 = i0 | stride
        a0 = amps[i0]
        a1 = amps[i1]
        amps[i0] = m00 * a0 + m01 * a1
        amps[i1] = m10 * a0 + m11 * a1


def apply_2q(cplx[::1] amps, const cplx[:, :] mat, int t0, int t1, int threads):
    cdef Py_ssize_t quarter = amps.shape[0] >> 2
    cdef int low = t0 if t0 < t1 else t1
    cdef int high = t1 if t0 < t1 else t0
    cdef Py_ssize_t mlow = ((<Py_ssize_t> 1) << low) - 1
    cdef Py_ssize_t mhigh = ((<Py_ssize_t> 1) << high) - 1
    cdef Py_ssize_t s0 = (<Py_ssize_t> 1) << t0
    cdef Py_ssize_t s1 = (<Py_ssize_t> 1) << t1
    cdef cplx m00 = mat[0, 0], m01 = mat[0, 1], m02 = mat[0, 2], m03 = mat[0, 3]
    cdef cplx m10 = mat[1, 0], m11 = mat[1, 1], m12 = mat[1, 2], m13 = mat[1, 3]
    cdef cplx m20 = mat[2, 0], m21 = mat[2, 1], m22 = mat[2, 2], m23 = mat[2, 3]
    cdef cplx m30 = mat[3, 0], m31 = mat[3, 1], m32 = mat[3, 2], m33 = mat[3, 3]
    cdef Py_ssize_t g, base, i1, i2, i3
    cdef cplx a0, a1, a2, a3
    for g in prange(quarter, nogil=True, num_threads=threads, schedule="static"):
        base = ((g >> low) << (low + 1)) | (g & mlow)
        base = ((base >> high) << (high + 1)) | (base & mhigh)
        i1 = base | s0
        i2 = base | s1
        i3 = i1 | s1
        a0 = amps[base]
        a1 = amps[i1]
        a2 = amps[i2]
        a3 = amps[i3]
        amps[base] = m00 * a0 + m01 * a1 + m02 * a2 + m03 * a3
        amps[i1] = m10 * a0 + m11 * a1 + m12 * a2 + m13 * a3
        amps[i2] = m20 * a0 + m21 * a1 + m22 * a2 + m23 * a3
        amps[i3] = m30 * a0 + m31 * a1 + m32 * a2 + m33 * a3


def apply_swap(cplx[::1] amps, int t0, int t1, int threads):
    # Index-pair exchange of amplitudes whose bits at t0 and t1 differ.
    cdef Py_ssize_t quarter = amps.shape[0] >> 2
    cdef int low = t0 if t0 < t1 else t1
    cdef int high = t1 if t0 < t1 else t0
    cdef Py_ssize_t mlow = ((<Py_ssize_t> 1) << low) - 1
    cdef Py_ssize_t mhigh = ((<Py_ssize_t> 1) << high) - 1
    cdef Py_ssize_t sl = (<Py_ssize_t> 1) << low
    cdef Py_ssize_t sh = (<Py_ssize_t> 1) << high
    cdef Py_ssize_t g, base, ia, ib
    cdef cplx tmp
    for g in prange(quarter, nogil=True, num_threads=threads, schedule="static"):
        base = ((g >> low) << (low + 1)) | (g & mlow)
        base = ((base >> high) << (high + 1)) | (base & mhigh)
        ia = base | sl
        ib = base | sh
        tmp = amps[ia]
        amps[ia] = amps[ib]
        amps[ib] = tmp
