# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: truncated Cauchy products, cumulative power columns,
and power-series reciprocals.  A numpy fallback with the same signatures
lives in ``_kernels_py``; the active implementation is chosen in ``backend``.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline void _conv_trunc(const double complex* f, Py_ssize_t nf,
                             const double complex* g, Py_ssize_t ng,
                             double complex* out, Py_ssize_t n) noexcept nogil:
    # out[k] = sum_{j} f[j] g[k-j], truncated at n; gather order keeps the
    # inner loop a contiguous dot product
    cdef Py_ssize_t k, j, jlo, jhi
    cdef double complex acc
    for k in range(n):
        jlo = k - (ng - 1)
        if jlo < 0:
            jlo = 0
        jhi = k
        if jhi > nf - 1:
            jhi = nf - 1
        acc = 0.0
        for j in range(jlo, jhi + 1):
            acc = acc + f[j] * g[k - j]
        out[k] = acc


def cauchy_product(f, g, Py_ssize_t n):
    """First n coefficients of the product of two coefficient vectors."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] fa = np.ascontiguousarray(f, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] ga = np.ascontiguousarray(g, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    _conv_trunc(<const double complex*> fa.data, fa.shape[0],
                <const double complex*> ga.data, ga.shape[0],
                <double complex*> out.data, n)
    return out


def power_columns(phi, Py_ssize_t n):
    """n x n matrix whose column k holds the first n coefficients of phi**k."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] p = np.ascontiguousarray(phi, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.zeros((n, n), dtype=np.complex128, order="F")
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] col = np.zeros(n, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] nxt = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t np_ = p.shape[0]
    cdef Py_ssize_t k, i
    if np_ > n:
        np_ = n
    col[0] = 1.0
    out[0, 0] = 1.0
    for k in range(1, n):
        _conv_trunc(<const double complex*> col.data, n,
                    <const double complex*> p.data, np_,
                    <double complex*> nxt.data, n)
        for i in range(n):
            col[i] = nxt[i]
            out[i, k] = nxt[i]
    return out


def reciprocal(f, Py_ssize_t n):
    """First n coefficients of 1/f; requires f[0] != 0."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] fa = np.ascontiguousarray(f, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(n, dtype=np.complex128)
    cdef Py_ssize_t nf = fa.shape[0]
    cdef Py_ssize_t k, j, jmax
    cdef double complex f0 = fa[0]
    cdef double complex acc
    if f0 == 0:
        raise ZeroDivisionError("series has zero constant term")
    out[0] = 1.0 / f0
    for k in range(1, n):
        acc = 0.0
        jmax = k
        if jmax > nf - 1:
            jmax = nf - 1
        for j in range(1, jmax + 1):
            acc = acc + fa[j] * out[k - j]
        out[k] = -acc / f0
    return out
