"""Numpy implementations of the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def _parity_table(n):
    k = np.arange(n)
    bk = k[:, None] & k[None, :]
    par = np.zeros_like(bk)
    while bk.any():
        par ^= bk & 1
        bk >>= 1
    return par


def _sign_table(n):
    return 1 - 2 * _parity_table(n)


def _gathered(U):
    n = U.shape[0]
    k = np.arange(n)
    # F[a, k] = U[k, a ^ k]
    return U[k[None, :], k[None, :] ^ k[:, None]]


def fwht(x):
    n = x.shape[0]
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    y = np.asarray(x)
    h = 1
    while h < n:
        y = y.reshape(-1, 2, h)
        y = np.stack((y[:, 0] + y[:, 1], y[:, 0] - y[:, 1]), axis=1)
        h *= 2
    x[:] = y.reshape(n)


def traces_fast(U):
    U = np.ascontiguousarray(U, dtype=np.complex128)
    n = U.shape[0]
    if n & (n - 1):
        raise ValueError("side must be a power of two")
    T = _gathered(U)
    h = 1
    while h < n:
        T = T.reshape(n, -1, 2, h)
        T = np.stack((T[:, :, 0] + T[:, :, 1], T[:, :, 0] - T[:, :, 1]), axis=2)
        h *= 2
    return T.reshape(n, n)


def traces_naive(U):
    U = np.ascontiguousarray(U, dtype=np.complex128)
    n = U.shape[0]
    return _gathered(U) @ _sign_table(n).T.astype(np.complex128)


def signed_perm_dense(n, b, a, d):
    k = np.arange(n)
    par = _parity_table(n)[b]
    out = np.zeros((n, n), dtype=np.float64)
    out[k, a ^ k] = np.where((d + par) & 1, -1.0, 1.0)
    return out


def weighted_signed_sum(n, bad, weights):
    out = np.zeros((n, n), dtype=np.complex128)
    k = np.arange(n)
    par = _parity_table(n)
    for (b, a, d), c in zip(np.asarray(bad), np.asarray(weights)):
        if c == 0:
            continue
        out[k, a ^ k] += np.where((d + par[b]) & 1, -c, c)
    return out
