"""Numba twins of the numpy kernels.  Same signatures, explicit loops."""

import numpy as np
from numba import njit, prange


@njit(cache=True, parallel=True)
def act_rows(vecs, mats, add, mul):
    n = vecs.shape[0]
    out = np.empty((n, 4), dtype=np.uint8)
    for r in prange(n):
        for j in range(4):
            acc = mul[vecs[r, 0], mats[r, 0, j]]
            for i in range(1, 4):
                acc = add[acc, mul[vecs[r, i], mats[r, i, j]]]
            out[r, j] = acc
    return out


@njit(cache=True, parallel=True)
def matmul4(a, b, add, mul):
    n = a.shape[0]
    out = np.empty((n, 4, 4), dtype=np.uint8)
    for r in prange(n):
        for i in range(4):
            for j in range(4):
                acc = mul[a[r, i, 0], b[r, 0, j]]
                for k in range(1, 4):
                    acc = add[acc, mul[a[r, i, k], b[r, k, j]]]
                out[r, i, j] = acc
    return out


@njit(cache=True)
def normalize_rows(arr, mul, inv):
    n, w = arr.shape
    out = np.empty_like(arr)
    for r in range(n):
        lead = np.uint8(0)
        for k in range(w):
            if arr[r, k] != 0:
                lead = arr[r, k]
                break
        s = inv[lead]
        for k in range(w):
            out[r, k] = mul[arr[r, k], s]
    return out


@njit(cache=True, parallel=True)
def pluecker_codes(u, v, add, mul, sub, inv, q):
    n = u.shape[0]
    codes = np.empty(n, dtype=np.int64)
    for r in prange(n):
        key = np.empty(6, dtype=np.uint8)
        m = 0
        for i in range(4):
            for j in range(i + 1, 4):
                key[m] = sub[mul[u[r, i], v[r, j]], mul[u[r, j], v[r, i]]]
                m += 1
        lead = np.uint8(0)
        for k in range(6):
            if key[k] != 0:
                lead = key[k]
                break
        s = inv[lead]
        c = np.int64(0)
        for k in range(6):
            c = c * q + mul[key[k], s]
        codes[r] = c
    return codes
