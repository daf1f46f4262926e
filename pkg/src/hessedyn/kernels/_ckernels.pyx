# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the numeric hot loops (same contracts as ``_pykernels``)."""

import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport sqrt, isfinite

cnp.import_array()

ctypedef double complex cplx

cdef extern from "complex.h" nogil:
    double cabs(double complex)

UNRESOLVED = -1


cdef inline void _form(const cplx* a, int d, cplx t, cplx* f, cplx* ga, cplx* gb) noexcept nogil:
    cdef int k
    cdef cplx ff = 0, aa = 0, bb = 0
    for k in range(d, -1, -1):
        ff = ff * t + a[k]
        aa = aa * t + (d - k) * a[k]
        if k:
            bb = bb * t + k * a[k]
    f[0] = ff
    ga[0] = aa
    gb[0] = bb


cdef inline void _form_rev(const cplx* a, int d, cplx t, cplx* f, cplx* ga, cplx* gb) noexcept nogil:
    # same as _form on the reversed coefficient list
    cdef int j
    cdef cplx ff = 0, aa = 0, bb = 0
    cdef cplx c
    for j in range(d, -1, -1):
        c = a[d - j]
        ff = ff * t + c
        aa = aa * t + (d - j) * c
        if j:
            bb = bb * t + j * c
    f[0] = ff
    ga[0] = aa
    gb[0] = bb


cdef inline void _eval_pair(const cplx* a, int d, cplx x0, cplx x1,
                            cplx* f, cplx* d0, cplx* d1) noexcept nogil:
    cdef cplx t, ga, gb
    if cabs(x0) >= cabs(x1):
        t = x1 / x0
        _form(a, d, t, f, &ga, &gb)
        d0[0] = ga / x0
        d1[0] = gb / x0
    else:
        t = x0 / x1
        _form_rev(a, d, t, f, &ga, &gb)
        d1[0] = ga / x1
        d0[0] = gb / x1


cdef inline void _run(int nst, const long* degs, const long* offs,
                      const cplx* c0, const cplx* c1,
                      cplx* x0, cplx* x1, cplx* dx0, cplx* dx1, bint track) noexcept nogil:
    cdef int s, d
    cdef cplx f0, f1, a00, a01, a10, a11, t0, t1
    cdef double sc
    for s in range(nst):
        d = degs[s]
        _eval_pair(c0 + offs[s], d, x0[0], x1[0], &f0, &a00, &a01)
        _eval_pair(c1 + offs[s], d, x0[0], x1[0], &f1, &a10, &a11)
        if track:
            t0 = a00 * dx0[0] + a01 * dx1[0]
            t1 = a10 * dx0[0] + a11 * dx1[0]
        sc = cabs(f0)
        if cabs(f1) > sc:
            sc = cabs(f1)
        if sc == 0:
            sc = 1.0
        x0[0] = f0 / sc
        x1[0] = f1 / sc
        if track:
            dx0[0] = t0 / sc
            dx1[0] = t1 / sc


def _unpack(program):
    degs, offs, c0, c1 = program
    return (np.ascontiguousarray(degs, dtype=np.int64),
            np.ascontiguousarray(offs, dtype=np.int64),
            np.ascontiguousarray(c0, dtype=np.complex128),
            np.ascontiguousarray(c1, dtype=np.complex128))


def eval_program(program, x0, x1, dx0=None, dx1=None):
    cdef long[::1] degs
    cdef long[::1] offs
    cdef cplx[::1] c0
    cdef cplx[::1] c1
    degs, offs, c0, c1 = _unpack(program)
    track = dx0 is not None
    cdef cplx[::1] a0 = np.array(x0, dtype=np.complex128).ravel()
    cdef cplx[::1] a1 = np.array(x1, dtype=np.complex128).ravel()
    cdef cplx[::1] b0
    cdef cplx[::1] b1
    if track:
        b0 = np.array(dx0, dtype=np.complex128).ravel()
        b1 = np.array(dx1, dtype=np.complex128).ravel()
    else:
        b0 = np.zeros(a0.shape[0], dtype=np.complex128)
        b1 = np.zeros(a0.shape[0], dtype=np.complex128)
    cdef Py_ssize_t i, n = a0.shape[0]
    cdef int nst = degs.shape[0]
    cdef bint tr = track
    with nogil:
        for i in range(n):
            _run(nst, &degs[0], &offs[0], &c0[0], &c1[0], &a0[i], &a1[i], &b0[i], &b1[i], tr)
    if track:
        return np.asarray(a0), np.asarray(a1), np.asarray(b0), np.asarray(b1)
    return np.asarray(a0), np.asarray(a1)


def aberth(program, z, int maxiter=500, double tol=1e-15):
    cdef long[::1] degs
    cdef long[::1] offs
    cdef cplx[::1] c0
    cdef cplx[::1] c1
    degs, offs, c0, c1 = _unpack(program)
    cdef cplx[::1] zz = np.array(z, dtype=np.complex128).ravel()
    cdef Py_ssize_t n = zz.shape[0]
    cdef cplx[::1] corr = np.zeros(n, dtype=np.complex128)
    cdef cnp.uint8_t[::1] active = np.ones(n, dtype=np.uint8)
    cdef int nst = degs.shape[0]
    cdef int it = 0
    cdef Py_ssize_t i, j
    cdef cplx x0, x1, d0, d1, p, dp, w, s, c
    cdef bint any_active
    with nogil:
        for it in range(1, maxiter + 1):
            for i in range(n):
                corr[i] = 0
                if not active[i]:
                    continue
                x0 = 1
                x1 = zz[i]
                d0 = 0
                d1 = 1
                _run(nst, &degs[0], &offs[0], &c0[0], &c1[0], &x0, &x1, &d0, &d1, True)
                p = x1 - zz[i] * x0
                dp = d1 - x0 - zz[i] * d0
                if dp == 0:
                    continue
                w = p / dp
                s = 0
                for j in range(n):
                    if j != i:
                        s = s + 1.0 / (zz[i] - zz[j])
                c = w / (1 - w * s)
                if isfinite(c.real) and isfinite(c.imag):
                    corr[i] = c
            any_active = False
            for i in range(n):
                if active[i]:
                    zz[i] = zz[i] - corr[i]
                    if cabs(corr[i]) > tol * (1 + cabs(zz[i])):
                        any_active = True
                    else:
                        active[i] = 0
            if not any_active:
                break
    conv = np.asarray(active) == 0
    return np.asarray(zz), it, conv


cdef inline double _chordal(cplx a0, cplx a1, cplx b0, cplx b1) noexcept nogil:
    cdef double na = sqrt(cabs(a0) ** 2 + cabs(a1) ** 2)
    cdef double nb = sqrt(cabs(b0) ** 2 + cabs(b1) ** 2)
    return cabs(a0 * b1 - a1 * b0) / (na * nb)


def basin_grid(program, z0, z1, att0, att1, att_label, radius, int max_iter, int threads=1):
    cdef long[::1] degs
    cdef long[::1] offs
    cdef cplx[::1] c0
    cdef cplx[::1] c1
    degs, offs, c0, c1 = _unpack(program)
    cdef cplx[::1] p0 = np.array(z0, dtype=np.complex128).ravel()
    cdef cplx[::1] p1 = np.array(z1, dtype=np.complex128).ravel()
    cdef cplx[::1] q0 = np.ascontiguousarray(att0, dtype=np.complex128)
    cdef cplx[::1] q1 = np.ascontiguousarray(att1, dtype=np.complex128)
    cdef int[::1] lab = np.ascontiguousarray(att_label, dtype=np.int32)
    cdef double[::1] rad = np.ascontiguousarray(radius, dtype=np.float64)
    cdef Py_ssize_t n = p0.shape[0]
    cdef int na = q0.shape[0]
    labels_arr = np.full(n, -1, dtype=np.int32)
    iters_arr = np.zeros(n, dtype=np.int32)
    cdef int[::1] labels = labels_arr
    cdef int[::1] iters = iters_arr
    cdef int nst = degs.shape[0]
    cdef Py_ssize_t i
    cdef int it, j, found
    cdef cplx x0, x1, dz0, dz1
    for i in prange(n, nogil=True, num_threads=threads, schedule="dynamic", chunksize=64):
        x0 = p0[i]
        x1 = p1[i]
        dz0 = 0
        dz1 = 0
        found = -1
        it = 0
        while it <= max_iter:
            if it > 0:
                _run(nst, &degs[0], &offs[0], &c0[0], &c1[0], &x0, &x1, &dz0, &dz1, False)
            for j in range(na):
                if _chordal(x0, x1, q0[j], q1[j]) < rad[j]:
                    found = lab[j]
                    break
            if found >= 0:
                break
            it = it + 1
        labels[i] = found
        if found >= 0:
            iters[i] = it
        else:
            iters[i] = max_iter
    return labels_arr, iters_arr
