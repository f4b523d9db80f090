"""Closed-form census and incidence statistics for the twisted-cubic orbit structure of PG(3,q).

Every verification in this package ultimately compares computed data against
the closed forms collected here.  Pi values (planes through a line) are exact
rationals; Lambda values (lines in a plane) are always integers.

Plane types are ordered (Gamma, 2C, 3C, 1Cbar, 0C) throughout: the plane of
the osculating developable, planes meeting the cubic in 2 points, in 3 points,
exactly-1-point planes that are not osculating, and external planes.
"""

from fractions import Fraction

PLANE_TYPES = ("Gamma", "2C", "3C", "1Cbar", "0C")

# Line classes.  RA/IA/EGamma exist only for q not divisible by 3 (xi != 0);
# Axis/EA only for q divisible by 3 (xi = 0).
LINE_CLASSES = ("RC", "T", "IC", "UGamma", "UnGamma",
                "RA", "IA", "EGamma", "EnGamma", "Axis", "EA")


def xi_of(q):
    """Residue of q mod 3 mapped to {1, -1, 0}."""
    return {0: 0, 1: 1, 2: -1}[q % 3]


def beta_of(q):
    """Residue of q mod 4 mapped to {1, -1}; only defined for odd q."""
    if q % 2 == 0:
        raise ValueError("beta is defined for odd q only")
    return 1 if q % 4 == 1 else -1


def n_points(q):
    return q ** 3 + q ** 2 + q + 1


def n_planes(q):
    return n_points(q)


def n_lines(q):
    return (q * q + 1) * (q * q + q + 1)


def _exact(n, d=1):
    f = Fraction(n, d)
    if f.denominator != 1:
        raise ValueError(f"expected integer, got {f}")
    return int(f)


def plane_census(q):
    """Sizes of the five plane orbits, in PLANE_TYPES order."""
    return {
        "Gamma": q + 1,
        "2C": q * q + q,
        "3C": _exact(q ** 3 - q, 6),
        "1Cbar": _exact(q ** 3 - q, 2),
        "0C": _exact(q ** 3 - q, 3),
    }


def valid_line_classes(q):
    if xi_of(q) == 0:
        return ("RC", "T", "IC", "UGamma", "UnGamma", "EnGamma", "Axis", "EA")
    return ("RC", "T", "IC", "UGamma", "UnGamma", "RA", "IA", "EGamma", "EnGamma")


def line_census(q):
    """Sizes of the line classes valid at this q."""
    sizes = {
        "RC": _exact(q * q + q, 2),
        "T": q + 1,
        "IC": _exact(q * q - q, 2),
        "UGamma": q * q + q,
        "UnGamma": q ** 3 - q,
        "EnGamma": (q * q - q) * (q * q - 1),
    }
    if xi_of(q) == 0:
        sizes["Axis"] = 1
        sizes["EA"] = (q + 1) * (q * q - 1)
    else:
        sizes["RA"] = sizes["RC"]
        sizes["IA"] = sizes["IC"]
        sizes["EGamma"] = q ** 3 - q
    return sizes


def orbit_counts(q):
    """Number of group orbits per line class (None = open, at least 2)."""
    odd = q % 2 == 1
    counts = {
        "RC": 1, "T": 1, "IC": 1,
        "UGamma": 1 if odd else 2,
        "UnGamma": 2 if odd else 1,
        "EnGamma": None,
    }
    if xi_of(q) == 0:
        counts["Axis"] = 1
        counts["EA"] = 3
    else:
        counts["RA"] = 1
        counts["IA"] = 1
        counts["EGamma"] = 2 if odd else 1
    return counts


def table1(q):
    """Class-level (Pi, Lambda) per (line class, plane type).

    Returns {(lam, pi): (Fraction, int)} with pi in PLANE_TYPES order.
    """
    F = Fraction
    x = xi_of(q)
    rows = {
        "RC":      ([0, 2, q - 1, 0, 0],
                    [0, 1, 3, 0, 0]),
        "T":       ([1, q, 0, 0, 0],
                    [1, 1, 0, 0, 0]),
        "IC":      ([0, 0, 0, q + 1, 0],
                    [0, 0, 0, 1, 0]),
        "UGamma":  ([1, 1, F(q - 1, 2), F(q - 1, 2), 0],
                    [q, 1, 3, 1, 0]),
        "UnGamma": ([0, 2, F(q - 2, 2), F(q, 2), 0],
                    [0, 2 * (q - 1), 3 * (q - 2), q, 0]),
    }
    if x == 1:
        rows["RA"] = ([2, 0, F(q - 1, 3), 0, F(2 * (q - 1), 3)],
                      [q, 0, 1, 0, 1])
        rows["IA"] = ([0, 0, 0, q + 1, 0],
                      [0, 0, 0, 1, 0])
        rows["EGamma"] = ([1, 1, F(q - 4, 6), F(q, 2), F(q - 1, 3)],
                          [q * q - q, q - 1, q - 4, q, q - 1])
        rows["EnGamma"] = ([0, 1, F(q * q - 3 * q + 4, 6 * (q - 1)),
                            F(q * q - q - 2, 2 * (q - 1)),
                            F(q * q + 1, 3 * (q - 1))],
                           [0, (q - 1) ** 2, q * q - 3 * q + 4,
                            q * q - q - 2, q * q + 1])
    elif x == -1:
        rows["RA"] = ([2, 0, 0, q - 1, 0],
                      [q, 0, 0, 1, 0])
        rows["IA"] = ([0, 0, F(q + 1, 3), 0, F(2 * (q + 1), 3)],
                      [0, 0, 1, 0, 1])
        rows["EGamma"] = ([1, 1, F(q - 2, 6), F(q - 2, 2), F(q + 1, 3)],
                          [q * q - q, q - 1, q - 2, q - 2, q + 1])
        rows["EnGamma"] = ([0, 1, F(q - 2, 6), F(q, 2), F(q + 1, 3)],
                           [0, (q - 1) ** 2, q * q - 3 * q + 2,
                            q * q - q, q * q - 1])
    else:
        rows["EnGamma"] = ([0, 1, F(q * q - 3 * q + 3, 6 * (q - 1)),
                            F(q * q - q - 1, 2 * (q - 1)),
                            F(q * q, 3 * (q - 1))],
                           [0, (q - 1) ** 2, q * q - 3 * q + 3,
                            q * q - q - 1, q * q])
        rows["Axis"] = ([q + 1, 0, 0, 0, 0],
                        [1, 0, 0, 0, 0])
        rows["EA"] = ([1, F(q, q + 1), F(q * (q - 2), 6 * (q + 1)),
                       F(q * q, 2 * (q + 1)), F(q, 3)],
                      [q * q - 1, q - 1, q - 2, q, q + 1])
    out = {}
    for lam, (pis, lams) in rows.items():
        for pi, p, l in zip(PLANE_TYPES, pis, lams):
            out[(lam, pi)] = (Fraction(p), _exact(l))
    return out


def split_classes(q):
    """Line classes whose orbit decomposition has a closed-form target at this q."""
    out = []
    if q % 2 == 0 and q >= 8:
        out.append("UGamma")
    if q % 2 == 1 and q >= 5:
        out.append("UnGamma")
        if xi_of(q) != 0:
            out.append("EGamma")
    if xi_of(q) == 0 and q >= 9:
        out.append("EA")
    return tuple(out)


def orbit_splits(q):
    """Orbit sizes per split class, indexed as in table2 (j = 1, 2[, 3])."""
    out = {}
    for lam in split_classes(q):
        if lam == "UGamma":
            out[lam] = (q + 1, q * q - 1)
        elif lam in ("UnGamma", "EGamma"):
            half = _exact(q ** 3 - q, 2)
            out[lam] = (half, half)
        else:
            small = _exact(q * q - 1, 2)
            out[lam] = (q ** 3 - q, small, small)
    return out


def table2(q):
    """Per-orbit (Pi, Lambda) for the split classes valid at this q.

    Returns {(lam, j, pi): (Fraction, int)} with j counted from 1.
    """
    F = Fraction
    x = xi_of(q)
    rows = {}
    if q % 2 == 0 and q >= 8:
        rows[("UGamma", 1)] = ([1, q, 0, 0, 0],
                               [1, 1, 0, 0, 0])
        rows[("UGamma", 2)] = ([1, 0, F(q, 2), F(q, 2), 0],
                               [q - 1, 0, 3, 1, 0])
    if q % 2 == 1 and q >= 5:
        rows[("UnGamma", 1)] = ([0, 1, F(q - 1, 2), F(q + 1, 2), 0],
                                [0, F(q - 1, 2), F(3 * (q - 1), 2), F(q + 1, 2), 0])
        rows[("UnGamma", 2)] = ([0, 3, F(q - 3, 2), F(q - 1, 2), 0],
                                [0, F(3 * (q - 1), 2), F(3 * (q - 3), 2), F(q - 1, 2), 0])
        if x == 1:
            rows[("EGamma", 1)] = ([1, 0, F(q - 1, 6), F(q + 1, 2), F(q - 1, 3)],
                                   [F(q * q - q, 2), 0, F(q - 1, 2), F(q + 1, 2), F(q - 1, 2)])
            rows[("EGamma", 2)] = ([1, 2, F(q - 7, 6), F(q - 1, 2), F(q - 1, 3)],
                                   [F(q * q - q, 2), q - 1, F(q - 7, 2), F(q - 1, 2), F(q - 1, 2)])
        elif x == -1:
            rows[("EGamma", 1)] = ([1, 0, F(q + 1, 6), F(q - 1, 2), F(q + 1, 3)],
                                   [F(q * q - q, 2), 0, F(q + 1, 2), F(q - 1, 2), F(q + 1, 2)])
            rows[("EGamma", 2)] = ([1, 2, F(q - 5, 6), F(q - 3, 2), F(q + 1, 3)],
                                   [F(q * q - q, 2), q - 1, F(q - 5, 2), F(q - 3, 2), F(q + 1, 2)])
    if x == 0 and q >= 9:
        rows[("EA", 1)] = ([1, 1, F(q - 3, 6), F(q - 1, 2), F(q, 3)],
                           [q * q - q, q - 1, q - 3, q - 1, q])
        rows[("EA", 2)] = ([1, 0, F(q, 3), 0, F(2 * q, 3)],
                           [F(q - 1, 2), 0, 1, 0, 1])
        rows[("EA", 3)] = ([1, 0, 0, q, 0],
                           [F(q - 1, 2), 0, 0, 1, 0])
    out = {}
    for (lam, j), (pis, lams) in rows.items():
        for pi, p, l in zip(PLANE_TYPES, pis, lams):
            out[(lam, j, pi)] = (Fraction(p), _exact(l))
    return out


def character_counts(q):
    """Closed form for (#roots, #non-square values) of f(c) = -(4/3)c^2 - 3 over F_q*."""
    if q % 2 == 0 or q % 3 == 0:
        raise ValueError("defined for odd q not divisible by 3")
    x, b = xi_of(q), beta_of(q)
    return (b + 1, _exact(q + 2 * x - 2 - b, 2))
