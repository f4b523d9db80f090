"""Pure-numpy batched primitives: table-driven GF(q) linear algebra on 4-vectors."""

import numpy as np

_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def act_rows(vecs, mats, add, mul):
    """Row-vector action vecs[r] @ mats[r] over the field tables.

    vecs: (n, 4) uint8, mats: (n, 4, 4) uint8 -> (n, 4) uint8.
    """
    acc = mul[vecs[:, 0][:, None], mats[:, 0, :]]
    for i in range(1, 4):
        acc = add[acc, mul[vecs[:, i][:, None], mats[:, i, :]]]
    return acc


def matmul4(a, b, add, mul):
    """Paired 4x4 matrix products a[r] @ b[r] over the field tables."""
    out = np.empty_like(a)
    for i in range(4):
        acc = mul[a[:, i, 0][:, None], b[:, 0, :]]
        for k in range(1, 4):
            acc = add[acc, mul[a[:, i, k][:, None], b[:, k, :]]]
        out[:, i, :] = acc
    return out


def normalize_rows(arr, mul, inv):
    """Scale each nonzero row so its first nonzero entry becomes 1."""
    first = np.argmax(arr != 0, axis=1)
    lead = arr[np.arange(len(arr)), first]
    return mul[arr, inv[lead][:, None]]


def pluecker_codes(u, v, add, mul, sub, inv, q):
    """Canonical line keys for spans (u[r], v[r]), packed base q into int64.

    The six 2x2 minors in order (01,02,03,12,13,23), normalized so the
    first nonzero minor is 1, then read as big-endian base-q digits.
    """
    mins = [sub[mul[u[:, i], v[:, j]], mul[u[:, j], v[:, i]]] for i, j in _PAIRS]
    key = normalize_rows(np.stack(mins, axis=1), mul, inv)
    codes = key[:, 0].astype(np.int64)
    for k in range(1, 6):
        codes = codes * q + key[:, k]
    return codes
