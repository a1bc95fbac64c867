# cython: language_level=3
"""Compiled kernels for the qubit (p = 2) hot loops.

Every function here has a numpy twin in :mod:`spdecomp._fallback` with the
same signature and output. Row/column integers follow the matrix layout, so
bit ``w-1-i`` of an integer is qubit ``i``.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _parity(unsigned long long x) noexcept nogil:
    return __builtin_popcountll(x) & 1


def fwht(double complex[::1] x):
    """In-place unnormalized Walsh-Hadamard transform of a length-2^m vector."""
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t h = 1, i, j
    cdef double complex u, v
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    with nogil:
        while h < n:
            i = 0
            while i < n:
                for j in range(i, i + h):
                    u = x[j]
                    v = x[j + h]
                    x[j] = u + v
                    x[j + h] = u - v
                i += 2 * h
            h *= 2


def traces_fast(const double complex[:, ::1] U):
    """``T[a, b] = sum_k (-1)^(b.k) U[k, a^k]`` via one FWHT per ``a``."""
    cdef Py_ssize_t n = U.shape[0]
    cdef Py_ssize_t a, k, h, i, j
    cdef double complex u, v
    out = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] T = out
    with nogil:
        for a in range(n):
            for k in range(n):
                T[a, k] = U[k, a ^ k]
            h = 1
            while h < n:
                i = 0
                while i < n:
                    for j in range(i, i + h):
                        u = T[a, j]
                        v = T[a, j + h]
                        T[a, j] = u + v
                        T[a, j + h] = u - v
                    i += 2 * h
                h *= 2
    return out


def traces_naive(const double complex[:, ::1] U):
    """Same table as :func:`traces_fast`, one O(n) sum per entry."""
    cdef Py_ssize_t n = U.shape[0]
    cdef Py_ssize_t a, b, k
    cdef double complex s
    out = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] T = out
    with nogil:
        for a in range(n):
            for b in range(n):
                s = 0
                for k in range(n):
                    if _parity(b & k):
                        s = s - U[k, a ^ k]
                    else:
                        s = s + U[k, a ^ k]
                T[a, b] = s
    return out


def signed_perm_dense(Py_ssize_t n, unsigned long long b, unsigned long long a, int d):
    """Dense ``(S)_{k,l} = (-1)^(d + b.k) delta(l, a^k)`` as float64."""
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] S = out
    cdef Py_ssize_t k
    with nogil:
        for k in range(n):
            S[k, a ^ k] = -1.0 if (d + _parity(b & k)) & 1 else 1.0
    return out


def weighted_signed_sum(Py_ssize_t n, const long long[:, ::1] bad, const double complex[::1] weights):
    """Sum of ``weights[t] * S(b_t, a_t, d_t)`` with rows of ``bad`` = (b, a, d)."""
    out = np.zeros((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] R = out
    cdef Py_ssize_t t, k
    cdef unsigned long long b, a
    cdef int d
    cdef double complex c
    with nogil:
        for t in range(bad.shape[0]):
            b = <unsigned long long> bad[t, 0]
            a = <unsigned long long> bad[t, 1]
            d = <int> bad[t, 2]
            c = weights[t]
            if c == 0:
                continue
            for k in range(n):
                if (d + _parity(b & k)) & 1:
                    R[k, a ^ k] = R[k, a ^ k] - c
                else:
                    R[k, a ^ k] = R[k, a ^ k] + c
    return out
