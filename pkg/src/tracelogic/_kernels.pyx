# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled positional kernels; see ``_kernels_py`` for the layout contract."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.uint8_t u8
ctypedef cnp.int64_t i64


def next_step(const u8[:] p, const i64[:] start, const i64[:] prefix,
              const i64[:] cycle, bint strong):
    cdef Py_ssize_t n_seg = start.shape[0]
    cdef cnp.ndarray[u8, ndim=1] res = np.zeros(p.shape[0], dtype=np.uint8)
    cdef u8[:] out = res
    cdef Py_ssize_t j, i, s, pl, cl, n
    cdef u8 missing = 0 if strong else 1
    for j in range(n_seg):
        s = start[j]
        pl = prefix[j]
        cl = cycle[j]
        n = pl + cl
        for i in range(s, s + n - 1):
            out[i] = p[i + 1]
        if cl:
            out[s + n - 1] = p[s + pl]
        else:
            out[s + n - 1] = missing
    return res


cdef void _sweep(const u8[:] pv, const u8[:] qv, u8[:] out, Py_ssize_t s,
                 Py_ssize_t pl, Py_ssize_t cl, bint is_until) nogil:
    cdef u8 carry = 0 if is_until else 1
    cdef Py_ssize_t v, i, base
    if cl:
        base = s + pl
        for v in range(2 * cl - 1, -1, -1):
            i = base + v % cl
            if is_until:
                carry = qv[i] | (pv[i] & carry)
            else:
                carry = qv[i] & (pv[i] | carry)
            if v < cl:
                out[i] = carry
        carry = out[base]
    i = s + pl - 1
    while i >= s:
        if is_until:
            carry = qv[i] | (pv[i] & carry)
        else:
            carry = qv[i] & (pv[i] | carry)
        out[i] = carry
        i -= 1


def _run(const u8[:] p, const u8[:] q, const i64[:] start, const i64[:] prefix,
         const i64[:] cycle, bint is_until):
    cdef cnp.ndarray[u8, ndim=1] res = np.zeros(p.shape[0], dtype=np.uint8)
    cdef u8[:] out = res
    cdef Py_ssize_t j
    with nogil:
        for j in range(start.shape[0]):
            _sweep(p, q, out, start[j], prefix[j], cycle[j], is_until)
    return res


def until(p, q, start, prefix, cycle):
    return _run(p, q, start, prefix, cycle, True)


def release(p, q, start, prefix, cycle):
    return _run(p, q, start, prefix, cycle, False)
