"""Table-based arithmetic for small finite fields GF(q) and their quadratic extensions.

Elements are integer indices 0..q-1.  The index encodes the coefficient
vector of the element over the prime field, little-endian base p, so the
prime subfield occupies indices 0..p-1 and an extension GF(q^2) built on
top of GF(q) contains GF(q) as the identity on indices 0..q-1.

All arithmetic is precomputed into dense numpy tables (q <= 16 keeps the
largest table at 256 x 256), which the enumeration kernels index directly.
"""

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

DEFAULT_MAX_Q = 16


class NotAPrimePower(ValueError):
    """q is not p^e for a prime p."""


class BoundExceeded(ValueError):
    """q is above the configured desk-scale bound (CUBICA_MAX_Q)."""


class EvenCharacteristic(ValueError):
    """The quadratic character requires odd q."""


class BadModulus(ValueError):
    """Operation requires q odd and not divisible by 3."""


@dataclass(eq=False, repr=False)
class FieldSpec:
    """Arithmetic tables for one field.

    modulus is the little-endian coefficient list of the defining monic
    polynomial: over GF(p) for a base field with e > 1, over GF(q) for a
    quadratic extension; empty for prime fields.
    """

    q: int
    p: int
    e: int
    modulus: tuple
    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray
    sqrt_table: np.ndarray
    chi: np.ndarray | None = None
    frob: np.ndarray | None = None
    ext: "FieldSpec | None" = None

    @property
    def xi(self):
        return {0: 0, 1: 1, 2: -1}[self.q % 3]

    @property
    def beta(self):
        if self.q % 2 == 0:
            raise EvenCharacteristic("beta = q mod 4 is used for odd q only")
        return 1 if self.q % 4 == 1 else -1

    def __repr__(self):
        return f"FieldSpec(q={self.q})"


def _factor_prime_power(q):
    if q < 2:
        raise NotAPrimePower(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if p * p > q:
        return q, 1
    e, n = 0, q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise NotAPrimePower(f"{q} is not a prime power")
    return p, e


def _poly_divmod(a, b, p):
    """Quotient/remainder of little-endian coefficient lists over GF(p), b monic."""
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    quot = [0] * max(da - db + 1, 1)
    for k in range(da - db, -1, -1):
        c = a[k + db] % p
        quot[k] = c
        for i in range(db + 1):
            a[k + i] = (a[k + i] - c * b[i]) % p
    return quot, [c % p for c in a[:db]]


def _is_irreducible(m, p):
    """m: monic little-endian over GF(p).  Trial division up to half degree."""
    e = len(m) - 1
    if m[0] == 0:
        return False
    for d in range(1, e // 2 + 1):
        for tail in product(range(p), repeat=d):
            div = list(tail) + [1]
            _, rem = _poly_divmod(m, div, p)
            if not any(rem):
                return False
    return True


def _base_modulus(p, e):
    """Least monic irreducible by the (a_{e-1},..,a_0) coefficient tuple."""
    for coeffs in product(range(p), repeat=e):
        m = list(reversed(coeffs)) + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")


def _digits(n, p, e):
    out = []
    for _ in range(e):
        out.append(n % p)
        n //= p
    return out


def _undigits(ds, p):
    n = 0
    for d in reversed(ds):
        n = n * p + d
    return n


def _build_prime_tables(q):
    idx = np.arange(q, dtype=np.int64)
    add = (idx[:, None] + idx[None, :]) % q
    sub = (idx[:, None] - idx[None, :]) % q
    mul = (idx[:, None] * idx[None, :]) % q
    neg = (-idx) % q
    return add, sub, mul, neg


def _build_poly_tables(q, p, e, modulus):
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    polys = [_digits(n, p, e) for n in range(q)]
    for a in range(q):
        for b in range(q):
            s = [(x + y) % p for x, y in zip(polys[a], polys[b])]
            add[a, b] = _undigits(s, p)
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(polys[a]):
                if x:
                    for j, y in enumerate(polys[b]):
                        prod[i + j] = (prod[i + j] + x * y) % p
            _, rem = _poly_divmod(prod, list(modulus), p)
            rem += [0] * (e - len(rem))
            mul[a, b] = _undigits(rem, p)
    neg = np.array([_undigits([(-c) % p for c in polys[a]], p) for a in range(q)],
                   dtype=np.int64)
    sub = add[:, neg]
    return add, sub, mul, neg


def _finish_spec(q, p, e, modulus, add, sub, mul, neg):
    inv = np.zeros(q, dtype=np.int64)
    nz_a, nz_b = np.nonzero(mul == 1)
    inv[nz_a] = nz_b
    assert np.all(inv[1:] > 0), "missing inverses: modulus not irreducible?"

    sqrt_table = np.full(q, -1, dtype=np.int64)
    for y in range(q - 1, -1, -1):
        sqrt_table[mul[y, y]] = y  # descending loop leaves the least root

    chi = None
    if q % 2 == 1:
        chi = np.where(sqrt_table >= 0, 1, -1).astype(np.int8)
        chi[0] = 0

    cast = lambda t: np.ascontiguousarray(t, dtype=np.uint8)
    return FieldSpec(q=q, p=p, e=e, modulus=tuple(modulus),
                     add=cast(add), sub=cast(sub), mul=cast(mul),
                     neg=cast(neg), inv=cast(inv),
                     sqrt_table=sqrt_table.astype(np.int16), chi=chi)


def _build_base(q):
    p, e = _factor_prime_power(q)
    if e == 1:
        modulus = ()
        add, sub, mul, neg = _build_prime_tables(q)
    else:
        modulus = _base_modulus(p, e)
        add, sub, mul, neg = _build_poly_tables(q, p, e, modulus)
    return _finish_spec(q, p, e, modulus, add, sub, mul, neg)


def _ext_modulus(base):
    """Least (a1, a0) with x^2 + a1 x + a0 irreducible over GF(q)."""
    q = base.q
    add, mul = base.add, base.mul
    for a1 in range(q):
        for a0 in range(q):
            if all(add[mul[t, t], add[mul[a1, t], a0]] != 0 for t in range(q)):
                return (a0, a1, 1)
    raise AssertionError("no irreducible quadratic found")


def _build_ext(base):
    q = base.q
    a0, a1, _ = _ext_modulus(base)
    Q = q * q
    idx = np.arange(Q, dtype=np.int64)
    lo, hi = idx % q, idx // q
    ADD, MUL, NEG = (t.astype(np.int64) for t in (base.add, base.mul, base.neg))

    add = ADD[lo[:, None], lo[None, :]] + q * ADD[hi[:, None], hi[None, :]]
    neg = NEG[lo] + q * NEG[hi]
    sub = add[:, neg]

    # (l1 + h1 w)(l2 + h2 w) with w^2 = -a1 w - a0
    l1, h1 = lo[:, None], hi[:, None]
    l2, h2 = lo[None, :], hi[None, :]
    hh = MUL[h1, h2]
    mlo = ADD[MUL[l1, l2], NEG[MUL[a0, hh]]]
    mhi = ADD[ADD[MUL[l1, h2], MUL[h1, l2]], NEG[MUL[a1, hh]]]
    mul = mlo + q * mhi

    spec = _finish_spec(Q, base.p, 2 * base.e, (a0, a1, 1), add, sub, mul, neg)

    frob = np.zeros(Q, dtype=np.int64)
    mul64 = mul
    for x in range(Q):
        r = 1
        for _ in range(q):
            r = mul64[r, x]
        frob[x] = r
    spec.frob = frob.astype(np.uint8)
    return spec


def max_q():
    return int(os.environ.get("CUBICA_MAX_Q", DEFAULT_MAX_Q))


@lru_cache(maxsize=None)
def _field_cached(q):
    base = _build_base(q)
    base.ext = _build_ext(base)
    return base


def field_make(q: int) -> FieldSpec:
    """Build GF(q) with its quadratic extension attached as .ext."""
    if not isinstance(q, int) or isinstance(q, bool):
        raise NotAPrimePower(f"{q!r} is not a prime power")
    bound = max_q()
    if q > bound:
        raise BoundExceeded(f"q={q} exceeds bound {bound} (CUBICA_MAX_Q)")
    _factor_prime_power(q)
    return _field_cached(q)


def element_coeffs(field: FieldSpec, a: int) -> tuple:
    """Coefficient vector over GF(p), little-endian."""
    return tuple(_digits(a, field.p, field.e))


def scalar(field: FieldSpec, n: int) -> int:
    """Image of the integer n in the prime subfield."""
    return n % field.p


def quadratic_character(field: FieldSpec, a: int) -> int:
    if field.q % 2 == 0:
        raise EvenCharacteristic("quadratic character undefined in characteristic 2")
    return int(field.chi[a])


def sqrt(field: FieldSpec, a: int):
    """Both square roots of a, or None when a is a non-square."""
    r = int(field.sqrt_table[a])
    if r < 0:
        return None
    other = int(field.neg[r])
    return (r, other) if r <= other else (other, r)


def frobenius(field: FieldSpec, a: int) -> int:
    if field.frob is None:
        raise ValueError("frobenius table available on quadratic extensions only")
    return int(field.frob[a])


def character_value_counts(q: int) -> tuple:
    """(#roots, #non-square values) of f(c) = -(4/3)c^2 - 3 over F_q*."""
    if q % 2 == 0 or q % 3 == 0:
        raise BadModulus("need q odd and not divisible by 3")
    F = field_make(q)
    mul, add, neg, chi = F.mul, F.add, F.neg, F.chi
    four_thirds = mul[scalar(F, 4), F.inv[scalar(F, 3)]]
    three = scalar(F, 3)
    count_r = count_v = 0
    for c in range(1, q):
        val = neg[add[mul[four_thirds, mul[c, c]], three]]
        if val == 0:
            count_r += 1
        elif chi[val] == -1:
            count_v += 1
    return count_r, count_v
