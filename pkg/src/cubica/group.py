"""The stabilizer of the twisted cubic as explicit 4x4 projectivities.

Elements come from the two-parameter-row construction: for (a,b,c,d) with
ad - bc != 0 the matrix has rows

    (a^3,   a^2 c,          a c^2,          c^3  )
    (3a^2b, a^2 d + 2abc,   b c^2 + 2acd,   3c^2 d)
    (3ab^2, b^2 c + 2abd,   a d^2 + 2bcd,   3c d^2)
    (b^3,   b^2 d,          b d^2,          d^3  )

acting on row vectors from the right.  Matrices are scalar-normalized and
deduplicated, giving q^3 - q projective classes; ids follow lexicographic
order of the normalized 16-tuples.  Planes transform by the cofactor matrix
(the inverse-transpose up to a scalar), so no division is ever needed.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf, pg3
from . import _kernels as K


class ActionEscape(ValueError):
    """An orbit image left the item set handed to orbits()."""


@dataclass(eq=False, repr=False)
class GroupModel:
    field: gf.FieldSpec
    mats: np.ndarray        # (n, 4, 4) uint8, scalar-normalized, lex order
    plane_mats: np.ndarray  # (n, 4, 4) uint8, cofactor matrices
    params: np.ndarray      # (n, 4) uint8, an (a,b,c,d) witness per element
    mat_codes: np.ndarray   # (n,) uint64, nibble-packed matrices, ascending
    identity_id: int

    @property
    def order(self):
        return len(self.mats)

    def __repr__(self):
        return f"GroupModel(q={self.field.q}, order={self.order})"


def _pack16(flat):
    """Pack (n,16) uint8 entries (< 16) into one uint64 per row, big-endian."""
    code = flat[:, 0].astype(np.uint64)
    for k in range(1, 16):
        code = (code << np.uint64(4)) | flat[:, k].astype(np.uint64)
    return code


def _det3(F, m):
    mul, add, sub = F.mul, F.add, F.sub
    a, b, c = m[:, 0, 0], m[:, 0, 1], m[:, 0, 2]
    d, e, f = m[:, 1, 0], m[:, 1, 1], m[:, 1, 2]
    g, h, i = m[:, 2, 0], m[:, 2, 1], m[:, 2, 2]
    t1 = mul[a, sub[mul[e, i], mul[f, h]]]
    t2 = mul[b, sub[mul[d, i], mul[f, g]]]
    t3 = mul[c, sub[mul[d, h], mul[e, g]]]
    return add[sub[t1, t2], t3]


def _cofactors(F, mats):
    out = np.empty_like(mats)
    for i in range(4):
        ri = [r for r in range(4) if r != i]
        for j in range(4):
            cj = [c for c in range(4) if c != j]
            det = _det3(F, mats[:, ri][:, :, cj])
            out[:, i, j] = F.neg[det] if (i + j) % 2 else det
    return out


def build_group(field: gf.FieldSpec) -> GroupModel:
    q = field.q
    mul, add, neg, sub = field.mul, field.add, field.neg, field.sub
    two, three = gf.scalar(field, 2), gf.scalar(field, 3)

    r = np.arange(q ** 4)
    a = (r // q ** 3).astype(np.uint8)
    b = (r // q ** 2 % q).astype(np.uint8)
    c = (r // q % q).astype(np.uint8)
    d = (r % q).astype(np.uint8)
    ok = sub[mul[a, d], mul[b, c]] != 0
    a, b, c, d = a[ok], b[ok], c[ok], d[ok]

    a2, b2, c2, d2 = mul[a, a], mul[b, b], mul[c, c], mul[d, d]
    ab, cd, bc, ad = mul[a, b], mul[c, d], mul[b, c], mul[a, d]
    m = np.empty((len(a), 16), dtype=np.uint8)
    m[:, 0] = mul[a2, a]
    m[:, 1] = mul[a2, c]
    m[:, 2] = mul[a, c2]
    m[:, 3] = mul[c2, c]
    m[:, 4] = mul[three, mul[a2, b]]
    m[:, 5] = add[mul[a2, d], mul[two, mul[a, bc]]]
    m[:, 6] = add[mul[b, c2], mul[two, mul[a, cd]]]
    m[:, 7] = mul[three, mul[c2, d]]
    m[:, 8] = mul[three, mul[a, b2]]
    m[:, 9] = add[mul[b2, c], mul[two, mul[b, ad]]]
    m[:, 10] = add[mul[a, d2], mul[two, mul[b, cd]]]
    m[:, 11] = mul[three, mul[c, d2]]
    m[:, 12] = mul[b2, b]
    m[:, 13] = mul[b2, d]
    m[:, 14] = mul[b, d2]
    m[:, 15] = mul[d2, d]

    m = K.normalize_rows(np.ascontiguousarray(m), mul, field.inv)
    uniq, first = np.unique(m, axis=0, return_index=True)
    assert len(uniq) == q ** 3 - q, "projective class count must be q^3 - q"
    mats = uniq.reshape(-1, 4, 4)
    params = np.stack([a[first], b[first], c[first], d[first]], axis=1)
    codes = _pack16(uniq)
    assert np.all(codes[1:] > codes[:-1])

    plane_mats = _cofactors(field, mats)
    # sanity: M times its cofactor transpose is a scalar matrix
    prod = K.matmul4(mats, np.ascontiguousarray(plane_mats.transpose(0, 2, 1)),
                     add, mul)
    prod = K.normalize_rows(np.ascontiguousarray(prod.reshape(-1, 16)), mul, field.inv)
    ident16 = np.eye(4, dtype=np.uint8).reshape(16)
    assert np.all(prod == ident16), "cofactor inverse check failed"

    identity_id = int(np.searchsorted(codes, _pack16(ident16[None, :])[0]))
    assert (mats[identity_id].reshape(16) == ident16).all()

    return GroupModel(field=field, mats=mats, plane_mats=plane_mats,
                      params=params, mat_codes=codes, identity_id=identity_id)


@lru_cache(maxsize=None)
def get_group(q: int) -> GroupModel:
    return build_group(gf.field_make(q))


def _point_ids_of_rows(space, rows):
    F = space.field
    normalized = K.normalize_rows(np.ascontiguousarray(rows), F.mul, F.inv)
    return space.point_index[pg3._codes_of(normalized, F.q)].astype(np.int32)


def _line_ids_of_bases(space, u, v):
    F = space.field
    codes = K.pluecker_codes(np.ascontiguousarray(u), np.ascontiguousarray(v),
                             F.add, F.mul, F.sub, F.inv, F.q)
    ids = np.searchsorted(space.line_codes, codes)
    assert np.array_equal(space.line_codes[ids], codes)
    return ids.astype(np.int32)


def element_images(space, grp: GroupModel, kind: str, ident: int) -> np.ndarray:
    """Images of one point/plane/line under every group element, by element id."""
    F = space.field
    n = grp.order
    if kind == "point":
        rows = np.tile(space.points[ident], (n, 1))
        return _point_ids_of_rows(space, K.act_rows(rows, grp.mats, F.add, F.mul))
    if kind == "plane":
        rows = np.tile(space.planes[ident], (n, 1))
        return _point_ids_of_rows(space, K.act_rows(rows, grp.plane_mats, F.add, F.mul))
    if kind == "line":
        u = np.tile(space.line_basis[ident, 0], (n, 1))
        v = np.tile(space.line_basis[ident, 1], (n, 1))
        return _line_ids_of_bases(space,
                                  K.act_rows(u, grp.mats, F.add, F.mul),
                                  K.act_rows(v, grp.mats, F.add, F.mul))
    raise ValueError(f"kind must be point|plane|line, got {kind!r}")


def act_point(space, grp: GroupModel, g: int, point_id: int) -> int:
    F = space.field
    row = K.act_rows(space.points[point_id][None, :], grp.mats[g][None], F.add, F.mul)
    return int(_point_ids_of_rows(space, row)[0])


def act_plane(space, grp: GroupModel, g: int, plane_id: int) -> int:
    F = space.field
    row = K.act_rows(space.planes[plane_id][None, :], grp.plane_mats[g][None],
                     F.add, F.mul)
    return int(_point_ids_of_rows(space, row)[0])


def act_line(space, grp: GroupModel, g: int, line_id: int) -> int:
    """Image of a line: the join of the images of its basis points."""
    F = space.field
    u = K.act_rows(space.line_basis[line_id, 0][None, :], grp.mats[g][None],
                   F.add, F.mul)
    v = K.act_rows(space.line_basis[line_id, 1][None, :], grp.mats[g][None],
                   F.add, F.mul)
    return int(_line_ids_of_bases(space, u, v)[0])


def orbits(space, grp: GroupModel, kind: str, items) -> dict:
    """Partition items (ids) into group orbits: {least member: sorted members}.

    Raises ActionEscape when an image of an item is not itself an item.
    """
    items = np.asarray(items, dtype=np.int64)
    domain = space.n_points if kind in ("point", "plane") else space.n_lines
    member = np.zeros(domain, dtype=bool)
    member[items] = True
    unvisited = member.copy()
    out = {}
    while True:
        rest = np.flatnonzero(unvisited)
        if len(rest) == 0:
            break
        seed = int(rest[0])
        img = np.unique(element_images(space, grp, kind, seed))
        if not member[img].all():
            stray = img[~member[img]][0]
            raise ActionEscape(
                f"{kind} {seed} maps to {int(stray)} outside the item set")
        out[seed] = img
        unvisited[img] = False
    assert sum(len(v) for v in out.values()) == len(items)
    return out
