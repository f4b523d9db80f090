"""Complete plane and line taxonomy under the cubic's stabilizer.

Planes carry one of five types (Gamma, 2C, 3C, 1Cbar, 0C) decided by
membership in the osculating developable and the number of cubic points.
Lines carry one of the classes RC, T, IC, UGamma, UnGamma plus, away from
characteristic 3, RA, IA, EGamma, EnGamma, and in characteristic 3, Axis
and EA.  The decision order follows the class definitions: chord tests
precede developable-plane membership, so no line can take two labels.

Orbit indices within the split classes are pinned to explicit representative
lines rather than to orbit sizes, because equal-size orbits are otherwise
indistinguishable; a disagreement between a representative's orbit size and
the expected split raises RepresentativeMismatch.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import cubic as cubic_mod
from . import group as group_mod
from . import gf, pg3, tables

PLANE_TYPES = tables.PLANE_TYPES
LINE_CLASSES = tables.LINE_CLASSES
_PLANE_IDX = {name: k for k, name in enumerate(PLANE_TYPES)}
_LINE_IDX = {name: k for k, name in enumerate(LINE_CLASSES)}


class RepresentativeMismatch(ValueError):
    """A canonical representative's orbit does not match the expected split."""


@dataclass(eq=False, repr=False)
class Taxonomy:
    space: pg3.SpaceModel
    cubic: cubic_mod.CubicModel
    grp: group_mod.GroupModel
    plane_code: np.ndarray   # (theta,) int8 index into PLANE_TYPES
    line_code: np.ndarray    # (beta,) int8 index into LINE_CLASSES
    line_orbit: np.ndarray   # (beta,) int8, 1-based orbit index within the class
    plane_members: dict      # type name -> sorted plane ids
    class_members: dict      # class name -> sorted line ids
    orbit_members: dict      # (class name, j) -> sorted line ids

    def plane_type(self, plane_id) -> str:
        return PLANE_TYPES[self.plane_code[plane_id]]

    def line_class(self, line_id) -> tuple:
        return (LINE_CLASSES[self.line_code[line_id]],
                int(self.line_orbit[line_id]))

    def __repr__(self):
        return f"Taxonomy(q={self.space.field.q})"


def _in_sorted(arr, x):
    i = np.searchsorted(arr, x)
    return i < len(arr) and arr[i] == x


def classify_plane(cub: cubic_mod.CubicModel, plane_id: int) -> str:
    """Scalar reference classification of one plane."""
    if cub.is_gamma_plane[plane_id]:
        return "Gamma"
    s = cub.space
    n = sum(pg3.incident(s, int(p), plane_id) for p in cub.point_ids)
    return {0: "0C", 1: "1Cbar", 2: "2C", 3: "3C"}[n]


def classify_line(cub: cubic_mod.CubicModel, line_id: int) -> str:
    """Scalar reference classification of one line (mirrors the bulk labeler)."""
    s = cub.space
    on = s.line_points[line_id]
    n = int((cub.t_of_point[on] >= 0).sum())
    in_gamma_plane = bool(cub.is_gamma_plane[s.line_pencils[line_id]].any())
    if n == 2:
        return "RC"
    if n == 1:
        if _in_sorted(cub.tangent_set, line_id):
            return "T"
        return "UGamma" if in_gamma_plane else "UnGamma"
    # No cubic point on the line: it is a chord iff it is the unique chord
    # through any one of its points.
    if cub.chord_of_point[on[0]] == line_id:
        return "IC"
    if cub.field.xi != 0:
        polar = int(cub.polar_line_of_line[line_id])
        polar_n = int((cub.t_of_point[s.line_points[polar]] >= 0).sum())
        if polar_n == 2:
            return "RA"
        if _in_sorted(cub.imaginary_chord_set, polar):
            return "IA"
        return "EGamma" if in_gamma_plane else "EnGamma"
    if line_id == cub.axis_line_id:
        return "Axis"
    shared = np.intersect1d(on, s.line_points[cub.axis_line_id], assume_unique=True)
    return "EA" if len(shared) else "EnGamma"


def label_planes(cub: cubic_mod.CubicModel) -> np.ndarray:
    s = cub.space
    F = s.field
    mul, add = F.mul.astype(np.int64), F.add.astype(np.int64)
    pts = s.points[cub.point_ids]
    d = mul[s.planes[:, 0][:, None], pts[:, 0][None, :]]
    for k in range(1, 4):
        d = add[d, mul[s.planes[:, k][:, None], pts[:, k][None, :]]]
    counts = np.count_nonzero(d == 0, axis=1)
    assert counts.max() <= 3
    assert np.all(counts[cub.is_gamma_plane] == 1)
    code = np.empty(s.n_planes, dtype=np.int8)
    code[counts == 0] = _PLANE_IDX["0C"]
    code[counts == 1] = _PLANE_IDX["1Cbar"]
    code[counts == 2] = _PLANE_IDX["2C"]
    code[counts == 3] = _PLANE_IDX["3C"]
    code[cub.is_gamma_plane] = _PLANE_IDX["Gamma"]
    return code


def label_lines(cub: cubic_mod.CubicModel) -> np.ndarray:
    s = cub.space
    beta = s.n_lines
    counts = (cub.t_of_point[s.line_points] >= 0).sum(axis=1)
    in_gamma = cub.is_gamma_plane[s.line_pencils].any(axis=1)
    is_tangent = np.zeros(beta, dtype=bool)
    is_tangent[cub.tangent_set] = True
    is_ic = np.zeros(beta, dtype=bool)
    is_ic[cub.imaginary_chord_set] = True

    code = np.full(beta, -1, dtype=np.int8)
    code[counts == 2] = _LINE_IDX["RC"]
    one = counts == 1
    code[one & is_tangent] = _LINE_IDX["T"]
    code[one & ~is_tangent & in_gamma] = _LINE_IDX["UGamma"]
    code[one & ~is_tangent & ~in_gamma] = _LINE_IDX["UnGamma"]
    rest = (counts == 0) & ~is_ic
    code[is_ic] = _LINE_IDX["IC"]
    if cub.field.xi != 0:
        pol = cub.polar_line_of_line
        code[rest & (counts[pol] == 2)] = _LINE_IDX["RA"]
        code[rest & is_ic[pol]] = _LINE_IDX["IA"]
        ext = rest & (counts[pol] != 2) & ~is_ic[pol]
        code[ext & in_gamma] = _LINE_IDX["EGamma"]
        code[ext & ~in_gamma] = _LINE_IDX["EnGamma"]
    else:
        on_axis = np.zeros(s.n_points, dtype=bool)
        on_axis[s.line_points[cub.axis_line_id]] = True
        meets_axis = on_axis[s.line_points].any(axis=1)
        code[rest & ~meets_axis] = _LINE_IDX["EnGamma"]
        code[rest & meets_axis] = _LINE_IDX["EA"]
        code[cub.axis_line_id] = _LINE_IDX["Axis"]
    assert code.min() >= 0
    return code


def least_nonsquare(field: gf.FieldSpec) -> int:
    """The least non-square in index order (odd q)."""
    return int(np.flatnonzero(field.chi == -1)[0])


def pinned_representatives(cub: cubic_mod.CubicModel) -> dict:
    """Representative lines pinning orbit indices in the split classes."""
    s = cub.space
    F = s.field
    q = F.q
    reps = {}
    p0 = cubic_mod.cubic_point(cub, 0)  # (0,0,0,1)
    if q % 2 == 0 and q >= 8:
        reps["UGamma"] = [
            (1, pg3.line_through(s, p0, s.point_id_of((0, 1, 0, 0)))),
            (2, pg3.line_through(s, p0, s.point_id_of((0, 1, 1, 0)))),
        ]
    if q % 2 == 1 and q >= 5:
        rho = least_nonsquare(F)
        reps["UnGamma"] = [
            (1, pg3.line_through(s, p0, s.point_id_of((1, 0, 1, 0)))),
            (2, pg3.line_through(s, p0, s.point_id_of((1, 0, rho, 0)))),
        ]
        if F.xi != 0:
            three = gf.scalar(F, 3)
            pi0 = cubic_mod.osculating_plane(cub, 0)
            pi1 = s.plane_id_of((0, F.neg[three], 0, F.neg[1]))
            pi2 = s.plane_id_of((0, F.neg[F.mul[three, rho]], 0, F.neg[1]))
            reps["EGamma"] = [
                (1, pg3.plane_meet(s, pi0, pi1)),
                (2, pg3.plane_meet(s, pi0, pi2)),
            ]
        if F.xi == 0 and q >= 9:
            pa = s.point_id_of((0, 1, 0, 0))
            reps["EA"] = [
                (1, pg3.line_through(s, pa, s.point_id_of((0, 0, 1, 1)))),
                (2, pg3.line_through(s, pa, s.point_id_of((1, 0, 1, 0)))),
                (3, pg3.line_through(s, pa, s.point_id_of((1, 0, rho, 0)))),
            ]
    return reps


def build_taxonomy(cub: cubic_mod.CubicModel, grp: group_mod.GroupModel) -> Taxonomy:
    """Label everything, then split line classes into group orbits."""
    s = cub.space
    q = s.field.q
    plane_code = label_planes(cub)
    line_code = label_lines(cub)
    plane_members = {name: np.flatnonzero(plane_code == _PLANE_IDX[name])
                     for name in PLANE_TYPES}
    class_members = {name: np.flatnonzero(line_code == _LINE_IDX[name])
                     for name in tables.valid_line_classes(q)}

    line_orbit = np.zeros(s.n_lines, dtype=np.int8)
    orbit_members = {}
    expected_counts = tables.orbit_counts(q) if q >= 5 else {}
    expected_splits = tables.orbit_splits(q)
    reps = pinned_representatives(cub)

    for name, members in class_members.items():
        parts = group_mod.orbits(s, grp, "line", members)
        want = expected_counts.get(name)
        if want is not None and len(parts) != want:
            raise RepresentativeMismatch(
                f"{name}: found {len(parts)} orbits, expected {want}")
        if name in reps and q >= 5:
            sizes = expected_splits[name]
            assigned = {}
            for j, rep_line in reps[name]:
                seed = next(sd for sd, arr in parts.items()
                            if _in_sorted(arr, rep_line))
                if len(parts[seed]) != sizes[j - 1]:
                    raise RepresentativeMismatch(
                        f"{name} orbit {j}: representative sits in an orbit of "
                        f"size {len(parts[seed])}, expected {sizes[j - 1]}")
                if seed in assigned.values():
                    raise RepresentativeMismatch(
                        f"{name}: representatives for two orbit indices "
                        f"landed in one orbit")
                assigned[j] = seed
            assert len(assigned) == len(parts)
        else:
            assigned = {j + 1: seed for j, seed in enumerate(sorted(parts))}
        for j, seed in assigned.items():
            line_orbit[parts[seed]] = j
            orbit_members[(name, j)] = parts[seed]

    assert line_orbit.min() >= 1
    return Taxonomy(space=s, cubic=cub, grp=grp,
                    plane_code=plane_code, line_code=line_code,
                    line_orbit=line_orbit, plane_members=plane_members,
                    class_members=class_members, orbit_members=orbit_members)


def split_orbits(taxonomy: Taxonomy) -> dict:
    """Orbit decomposition summary: {class: [(j, size), ...]}."""
    out = {}
    for (name, j), members in sorted(taxonomy.orbit_members.items()):
        out.setdefault(name, []).append((j, len(members)))
    return out


@lru_cache(maxsize=None)
def get_taxonomy(q: int) -> Taxonomy:
    return build_taxonomy(cubic_mod.get_cubic(q), group_mod.get_group(q))
