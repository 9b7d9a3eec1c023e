"""Pure-numpy fallback for the compiled kernels in ``_kernels.pyx``.

Same signatures and semantics; used when the extension is not built or
when ``CSYMCOMP_BACKEND=python`` is set.
"""

from __future__ import annotations

import numpy as np


def cauchy_product(f, g, n: int) -> np.ndarray:
    """First n coefficients of the product of two coefficient vectors."""
    f = np.asarray(f, dtype=np.complex128)[:n]
    g = np.asarray(g, dtype=np.complex128)[:n]
    out = np.zeros(n, dtype=np.complex128)
    if f.size and g.size:
        conv = np.convolve(f, g)
        m = min(n, conv.size)
        out[:m] = conv[:m]
    return out


def power_columns(phi, n: int) -> np.ndarray:
    """n x n matrix whose column k holds the first n coefficients of phi**k."""
    phi = np.asarray(phi, dtype=np.complex128)[:n]
    out = np.zeros((n, n), dtype=np.complex128, order="F")
    col = np.zeros(n, dtype=np.complex128)
    col[0] = 1.0
    out[:, 0] = col
    for k in range(1, n):
        col = cauchy_product(col, phi, n)
        out[:, k] = col
    return out


def reciprocal(f, n: int) -> np.ndarray:
    """First n coefficients of 1/f via Newton iteration; requires f[0] != 0."""
    f = np.asarray(f, dtype=np.complex128)[:n]
    if f[0] == 0:
        raise ZeroDivisionError("series has zero constant term")
    g = np.array([1.0 / f[0]], dtype=np.complex128)
    m = 1
    while m < n:
        m = min(2 * m, n)
        fg = cauchy_product(f[:m], g, m)
        two_minus = -fg
        two_minus[0] += 2.0
        g = cauchy_product(g, two_minus, m)
    return g
