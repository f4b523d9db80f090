"""The projective space PG(3,q): points, planes, lines, incidence.

Points and planes are normalized 4-vectors (leftmost nonzero entry 1) with
dense ids in lexicographic order of the coordinate tuple; both families share
one enumeration.  Lines are enumerated from the six reduced-row-echelon
patterns of 2x4 bases and keyed by normalized Pluecker 6-vectors; line ids
follow lexicographic order of those keys.

The model precomputes, per line, the sorted ids of its q+1 points and of the
q+1 planes through it (the pencil), plus the inverse map plane -> lines.
Everything downstream (classification, orbit counting, submatrix assembly)
reads these arrays instead of redoing linear algebra.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf
from ._kernels import numpy_impl as _nk

# 2x4 RREF pivot patterns (i, j) and their base counts q^f
_PATTERNS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


class CoincidentPoints(ValueError):
    """line_through needs two distinct points."""


class CoincidentPlanes(ValueError):
    """plane_meet needs two distinct planes."""


@dataclass(eq=False, repr=False)
class SpaceModel:
    field: gf.FieldSpec
    points: np.ndarray        # (theta, 4) uint8, normalized, lex order
    point_index: np.ndarray   # (q^4,) int32, big-endian coordinate code -> id
    line_points: np.ndarray   # (beta, q+1) int32, sorted point ids
    line_pencils: np.ndarray  # (beta, q+1) int32, sorted plane ids
    plane_lines: np.ndarray   # (theta, q^2+q+1) int32, sorted line ids
    line_basis: np.ndarray    # (beta, 2, 4) uint8, RREF basis rows
    pluecker_keys: np.ndarray  # (beta, 6) uint8, normalized, lex order
    line_codes: np.ndarray    # (beta,) int64, strictly increasing

    @property
    def planes(self):
        # planes are normalized 4-vectors too and share the enumeration
        return self.points

    @property
    def n_points(self):
        return len(self.points)

    @property
    def n_planes(self):
        return len(self.points)

    @property
    def n_lines(self):
        return len(self.line_points)

    def __repr__(self):
        return f"SpaceModel(q={self.field.q})"

    def _vec_code(self, coords):
        q = self.field.q
        c = 0
        for x in coords:
            c = c * q + int(x)
        return c

    def point_id_of(self, coords) -> int:
        """Id of the point with the given (not necessarily normalized) coordinates."""
        v = np.asarray(coords, dtype=np.uint8).reshape(1, 4)
        if not v.any():
            raise ValueError("zero vector is not a projective point")
        v = _nk.normalize_rows(v, self.field.mul, self.field.inv)[0]
        return int(self.point_index[self._vec_code(v)])

    plane_id_of = point_id_of

    def line_id_of_key(self, key) -> int:
        """Id of the line with the given normalized Pluecker key."""
        code = self._vec_code(key)
        i = int(np.searchsorted(self.line_codes, code))
        if i == self.n_lines or self.line_codes[i] != code:
            raise KeyError(f"not a Pluecker key of a line: {tuple(key)}")
        return i

    def point(self, i) -> tuple:
        return tuple(int(x) for x in self.points[i])

    plane = point

    def line_key(self, i) -> tuple:
        return tuple(int(x) for x in self.pluecker_keys[i])


def _point_array(q):
    one = np.array([[0, 0, 0, 1]], dtype=np.uint8)
    ar = np.arange(q, dtype=np.uint8)
    b2 = np.zeros((q, 4), dtype=np.uint8)
    b2[:, 2] = 1
    b2[:, 3] = ar
    b3 = np.zeros((q * q, 4), dtype=np.uint8)
    b3[:, 1] = 1
    b3[:, 2] = np.repeat(ar, q)
    b3[:, 3] = np.tile(ar, q)
    b4 = np.zeros((q ** 3, 4), dtype=np.uint8)
    b4[:, 0] = 1
    b4[:, 1] = np.repeat(ar, q * q)
    b4[:, 2] = np.tile(np.repeat(ar, q), q)
    b4[:, 3] = np.tile(ar, q * q)
    return np.concatenate([one, b2, b3, b4])


def _codes_of(vecs, q):
    c = vecs[:, 0].astype(np.int64)
    for k in range(1, vecs.shape[1]):
        c = c * q + vecs[:, k]
    return c


def _pattern_bases(q, i, j):
    ufree = [k for k in range(4) if k > i and k != j]
    vfree = [k for k in range(4) if k > j]
    nf = len(ufree) + len(vfree)
    n = q ** nf
    r = np.arange(n)
    u = np.zeros((n, 4), dtype=np.uint8)
    v = np.zeros((n, 4), dtype=np.uint8)
    u[:, i] = 1
    v[:, j] = 1
    for t, k in enumerate(ufree + vfree):
        col = ((r // q ** (nf - 1 - t)) % q).astype(np.uint8)
        (u if t < len(ufree) else v)[:, k] = col
    return u, v


def enumerate_space(field: gf.FieldSpec) -> SpaceModel:
    """Enumerate all points, planes and lines of PG(3,q) with dense ids."""
    q = field.q
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv

    points = _point_array(q)
    theta = q ** 3 + q * q + q + 1
    assert len(points) == theta
    point_index = np.full(q ** 4, -1, dtype=np.int32)
    point_index[_codes_of(points, q)] = np.arange(theta, dtype=np.int32)

    pts_blocks, pen_blocks, bas_blocks, code_blocks = [], [], [], []
    for i, j in _PATTERNS:
        u, v = _pattern_bases(q, i, j)
        n = len(u)
        # points on the line: v and u + t*v, all already normalized
        pids = np.empty((n, q + 1), dtype=np.int32)
        pids[:, 0] = point_index[_codes_of(v, q)]
        for t in range(q):
            w = add[u, mul[v, t]]
            pids[:, t + 1] = point_index[_codes_of(w, q)]
        # pencil: null-space pair (n1, n2) of the 2x4 basis, closed form
        k, l = (c for c in range(4) if c not in (i, j))
        n1 = np.zeros((n, 4), dtype=np.uint8)
        n2 = np.zeros((n, 4), dtype=np.uint8)
        n1[:, k] = 1
        n1[:, i] = neg[u[:, k]]
        n1[:, j] = neg[v[:, k]]
        n2[:, l] = 1
        n2[:, i] = neg[u[:, l]]
        n2[:, j] = neg[v[:, l]]
        pens = np.empty((n, q + 1), dtype=np.int32)
        pens[:, 0] = point_index[_codes_of(_nk.normalize_rows(n2, mul, inv), q)]
        for t in range(q):
            w = _nk.normalize_rows(add[n1, mul[n2, t]], mul, inv)
            pens[:, t + 1] = point_index[_codes_of(w, q)]
        pts_blocks.append(pids)
        pen_blocks.append(pens)
        bas_blocks.append(np.stack([u, v], axis=1))
        code_blocks.append(_nk.pluecker_codes(u, v, add, mul, field.sub, inv, q))

    codes = np.concatenate(code_blocks)
    beta = (q * q + 1) * (q * q + q + 1)
    assert len(codes) == beta
    order = np.argsort(codes)
    codes = codes[order]
    assert np.all(codes[1:] > codes[:-1]), "Pluecker keys must be distinct"

    line_points = np.sort(np.concatenate(pts_blocks)[order], axis=1)
    line_pencils = np.sort(np.concatenate(pen_blocks)[order], axis=1)
    line_basis = np.concatenate(bas_blocks)[order]

    keys = np.empty((beta, 6), dtype=np.uint8)
    rest = codes.copy()
    for k in range(5, -1, -1):
        keys[:, k] = rest % q
        rest //= q

    flat = line_pencils.ravel()
    assert np.all(np.bincount(flat, minlength=theta) == q * q + q + 1)
    by_plane = np.argsort(flat, kind="stable")
    plane_lines = np.repeat(np.arange(beta, dtype=np.int32), q + 1)[by_plane]
    plane_lines = plane_lines.reshape(theta, q * q + q + 1)

    model = SpaceModel(field=field, points=points, point_index=point_index,
                       line_points=line_points, line_pencils=line_pencils,
                       plane_lines=plane_lines, line_basis=line_basis,
                       pluecker_keys=keys, line_codes=codes)
    for arr in (points, point_index, line_points, line_pencils,
                plane_lines, line_basis, keys, codes):
        arr.flags.writeable = False
    return model


@lru_cache(maxsize=None)
def get_space(q: int) -> SpaceModel:
    return enumerate_space(gf.field_make(q))


def _dot4(field, a, b):
    add, mul = field.add, field.mul
    s = add[mul[a[0], b[0]], mul[a[1], b[1]]]
    return add[s, add[mul[a[2], b[2]], mul[a[3], b[3]]]]


def incident(space: SpaceModel, point_id: int, plane_id: int) -> bool:
    """True iff the point lies on the plane (sum of c_i x_i vanishes)."""
    return _dot4(space.field, space.points[point_id], space.planes[plane_id]) == 0


def line_through(space: SpaceModel, p_id: int, q_id: int) -> int:
    """Id of the unique line joining two distinct points."""
    if p_id == q_id:
        raise CoincidentPoints(f"point {p_id} given twice")
    f = space.field
    u = space.points[p_id:p_id + 1]
    v = space.points[q_id:q_id + 1]
    code = _nk.pluecker_codes(u, v, f.add, f.mul, f.sub, f.inv, f.q)[0]
    i = int(np.searchsorted(space.line_codes, code))
    assert space.line_codes[i] == code
    return i


def plane_meet(space: SpaceModel, a_id: int, b_id: int) -> int:
    """Id of the unique line common to two distinct planes."""
    if a_id == b_id:
        raise CoincidentPlanes(f"plane {a_id} given twice")
    common = np.intersect1d(space.plane_lines[a_id], space.plane_lines[b_id],
                            assume_unique=True)
    assert len(common) == 1
    return int(common[0])


def line_in_plane(space: SpaceModel, line_id: int, plane_id: int) -> bool:
    """True iff the whole line lies in the plane (both basis rows do)."""
    pi = space.planes[plane_id]
    u, v = space.line_basis[line_id]
    f = space.field
    return _dot4(f, u, pi) == 0 and _dot4(f, v, pi) == 0
