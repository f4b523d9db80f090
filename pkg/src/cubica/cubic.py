"""The twisted cubic in PG(3,q): points, osculating planes, tangents, chords, polarity.

The curve is parametrized by P(t) = (t^3, t^2, t, 1) for t in F_q together
with P(infinity) = (1,0,0,0); infinity is encoded as t = q throughout.  The
osculating plane at t is (1, -3t, 3t^2, -t^3), at infinity (0,0,0,1).

Chords of C are the real chords (secants), the tangents, and the imaginary
chords (rational lines through conjugate point pairs over GF(q^2)); together
they partition the points off C.  For q not divisible by 3 the null polarity
(x0,x1,x2,x3) -> (x3, -3x2, 3x1, -x0) interchanges C with the osculating
developable and chords with axes.  For q divisible by 3 the q+1 osculating
planes share a single line, the axis.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf, pg3
from ._kernels import numpy_impl as _nk


class PointOnCubic(ValueError):
    """chord_through_point is defined off the cubic only."""


class PolarityUndefined(ValueError):
    """The null polarity exists only for q not divisible by 3."""


@dataclass(eq=False, repr=False)
class CubicModel:
    space: pg3.SpaceModel
    point_ids: np.ndarray      # (q+1,) int32, indexed by t; t = q is infinity
    t_of_point: np.ndarray     # (theta,) int32, -1 off the cubic
    osc_plane_ids: np.ndarray  # (q+1,) int32
    is_gamma_plane: np.ndarray  # (theta,) bool
    tangent_ids: np.ndarray    # (q+1,) int32, indexed by t
    tangent_set: np.ndarray    # sorted line ids
    real_chords: np.ndarray    # sorted line ids
    imaginary_chord_set: np.ndarray  # sorted line ids
    chord_of_point: np.ndarray  # (theta,) int32, -1 exactly on the cubic
    polar_plane_of_point: np.ndarray | None = None  # (theta,) int32, xi != 0
    polar_point_of_plane: np.ndarray | None = None  # inverse permutation
    polar_line_of_line: np.ndarray | None = None    # (beta,) int32
    real_axes: np.ndarray | None = None
    imaginary_axes: np.ndarray | None = None
    axis_line_id: int | None = None                 # xi == 0

    @property
    def field(self):
        return self.space.field

    @property
    def inf(self):
        """The parameter value standing for infinity."""
        return self.space.field.q

    def __repr__(self):
        return f"CubicModel(q={self.space.field.q})"


def _point_coords(F, t):
    if t == F.q:
        return np.array([1, 0, 0, 0], dtype=np.uint8)
    t2 = F.mul[t, t]
    return np.array([F.mul[t2, t], t2, t, 1], dtype=np.uint8)


def _osc_coords(F, t):
    if t == F.q:
        return np.array([0, 0, 0, 1], dtype=np.uint8)
    three = gf.scalar(F, 3)
    t2 = F.mul[t, t]
    return np.array([1, F.neg[F.mul[three, t]], F.mul[three, t2],
                     F.neg[F.mul[t2, t]]], dtype=np.uint8)


def _check_t(cubic, t):
    if not 0 <= t <= cubic.inf:
        raise ValueError(f"parameter must be 0..{cubic.inf} (q means infinity), got {t}")


def build_cubic(space: pg3.SpaceModel) -> CubicModel:
    F = space.field
    q = F.q
    theta = space.n_points

    point_ids = np.array([space.point_id_of(_point_coords(F, t))
                          for t in range(q + 1)], dtype=np.int32)
    t_of_point = np.full(theta, -1, dtype=np.int32)
    t_of_point[point_ids] = np.arange(q + 1, dtype=np.int32)

    osc_plane_ids = np.array([space.plane_id_of(_osc_coords(F, t))
                              for t in range(q + 1)], dtype=np.int32)
    is_gamma_plane = np.zeros(theta, dtype=bool)
    is_gamma_plane[osc_plane_ids] = True

    two, three = gf.scalar(F, 2), gf.scalar(F, 3)
    tangent_ids = np.empty(q + 1, dtype=np.int32)
    for t in range(q):
        t2 = F.mul[t, t]
        deriv = (F.mul[three, t2], F.mul[two, t], 1, 0)
        tangent_ids[t] = pg3.line_through(space, int(point_ids[t]),
                                          space.point_id_of(deriv))
    tangent_ids[q] = pg3.line_through(space, int(point_ids[q]),
                                      space.point_id_of((0, 1, 0, 0)))

    real_chords = sorted(
        pg3.line_through(space, int(point_ids[a]), int(point_ids[b]))
        for a in range(q + 1) for b in range(a + 1, q + 1))

    imaginary = _imaginary_chords(space, F)

    chord_of_point = np.full(theta, -1, dtype=np.int32)
    for lid in (*real_chords, *tangent_ids.tolist(), *imaginary):
        for p in space.line_points[lid]:
            if t_of_point[p] >= 0:
                continue
            assert chord_of_point[p] == -1, "two chords meet off the cubic"
            chord_of_point[p] = lid
    assert np.all((chord_of_point >= 0) | (t_of_point >= 0)), "chords must cover"

    model = CubicModel(
        space=space,
        point_ids=point_ids, t_of_point=t_of_point,
        osc_plane_ids=osc_plane_ids, is_gamma_plane=is_gamma_plane,
        tangent_ids=tangent_ids,
        tangent_set=np.sort(tangent_ids),
        real_chords=np.array(real_chords, dtype=np.int32),
        imaginary_chord_set=np.array(sorted(imaginary), dtype=np.int32),
        chord_of_point=chord_of_point)

    if F.xi != 0:
        _attach_polarity(model)
    else:
        model.axis_line_id = pg3.plane_meet(space, int(osc_plane_ids[0]),
                                            int(osc_plane_ids[q]))
    return model


def _imaginary_chords(space, F):
    """Rational lines through conjugate point pairs of the extended cubic."""
    E = F.ext
    q = F.q
    w = q  # the adjoined generator: first index outside the subfield
    lines = set()
    for t in range(q, E.q):
        tc = int(E.frob[t])
        if tc <= t:
            continue  # one line per conjugate pair {t, t^q}
        a = np.array([E.mul[E.mul[t, t], t], E.mul[t, t], t, 1], dtype=np.int64)
        ac = E.frob[a]
        b1 = E.add[a, ac]
        wa = E.mul[w, a]
        b2 = E.add[wa, E.frob[wa]]
        assert b1.max() < q and b2.max() < q, "trace points must be rational"
        p1 = space.point_id_of(b1.astype(np.uint8))
        p2 = space.point_id_of(b2.astype(np.uint8))
        lines.add(pg3.line_through(space, p1, p2))
    assert len(lines) == (q * q - q) // 2
    return lines


def _attach_polarity(model):
    space = model.space
    F = space.field
    X = space.points
    c = np.empty_like(X)
    c[:, 0] = X[:, 3]
    c[:, 1] = F.neg[F.mul[gf.scalar(F, 3), X[:, 2]]]
    c[:, 2] = F.mul[gf.scalar(F, 3), X[:, 1]]
    c[:, 3] = F.neg[X[:, 0]]
    codes = pg3._codes_of(_nk.normalize_rows(c, F.mul, F.inv), F.q)
    polar = space.point_index[codes].astype(np.int32)
    inverse = np.empty_like(polar)
    inverse[polar] = np.arange(len(polar), dtype=np.int32)

    # a line maps to the join of the poles of two planes through it
    u = space.points[inverse[space.line_pencils[:, 0]]]
    v = space.points[inverse[space.line_pencils[:, 1]]]
    lcodes = _nk.pluecker_codes(u, v, F.add, F.mul, F.sub, F.inv, F.q)
    polar_line = np.searchsorted(space.line_codes, lcodes).astype(np.int32)
    assert np.array_equal(space.line_codes[polar_line], lcodes)

    model.polar_plane_of_point = polar
    model.polar_point_of_plane = inverse
    model.polar_line_of_line = polar_line
    model.real_axes = np.sort(polar_line[model.real_chords])
    model.imaginary_axes = np.sort(polar_line[model.imaginary_chord_set])


@lru_cache(maxsize=None)
def get_cubic(q: int) -> CubicModel:
    return build_cubic(pg3.get_space(q))


def cubic_point(cubic: CubicModel, t: int) -> int:
    """Point id of P(t); t = q means infinity."""
    _check_t(cubic, t)
    return int(cubic.point_ids[t])


def osculating_plane(cubic: CubicModel, t: int) -> int:
    """Plane id of the osculating plane at P(t)."""
    _check_t(cubic, t)
    return int(cubic.osc_plane_ids[t])


def tangent_line(cubic: CubicModel, t: int) -> int:
    """Line id of the tangent at P(t)."""
    _check_t(cubic, t)
    return int(cubic.tangent_ids[t])


def chord_through_point(cubic: CubicModel, point_id: int) -> int:
    """The unique chord (secant, tangent or imaginary chord) through an off-curve point."""
    if cubic.t_of_point[point_id] >= 0:
        raise PointOnCubic(f"point {point_id} lies on the cubic")
    return int(cubic.chord_of_point[point_id])


def imaginary_chords(cubic: CubicModel) -> np.ndarray:
    return cubic.imaginary_chord_set


def apply_polarity(cubic: CubicModel, kind: str, ident: int) -> int:
    """Dual of a point/plane/line id under the null polarity (xi != 0)."""
    if cubic.field.xi == 0:
        raise PolarityUndefined("q divisible by 3: the null polarity degenerates")
    if kind == "point":
        return int(cubic.polar_plane_of_point[ident])
    if kind == "plane":
        return int(cubic.polar_point_of_plane[ident])
    if kind == "line":
        return int(cubic.polar_line_of_line[ident])
    raise ValueError(f"kind must be point|plane|line, got {kind!r}")
