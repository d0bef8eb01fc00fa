"""Elliptic curve group arithmetic for the pairing backend.

Internals work on Jacobian (X, Y, Z) triples of gmpy2 mpz values with
Z = 0 as the identity; the public GroupElement type stores normalized
affine coordinates, so equality and hashing are plain tuple compares.
Scalar multiplication is width-5 wNAF over a batch-normalized table of
odd multiples.
"""

from __future__ import annotations

import gmpy2

mpz = gmpy2.mpz

INF = (mpz(1), mpz(1), mpz(0))


def jac_double(pt, p):
    X, Y, Z = pt
    if not Z or not Y:
        return INF
    XX = X * X % p
    YY = Y * Y % p
    YYYY = YY * YY % p
    ZZ = Z * Z % p
    S = 2 * ((X + YY) ** 2 - XX - YYYY) % p
    M = 3 * XX % p
    X3 = (M * M - 2 * S) % p
    Y3 = (M * (S - X3) - 8 * YYYY) % p
    Z3 = ((Y + Z) ** 2 - YY - ZZ) % p
    return (X3, Y3, Z3)


def jac_add_affine(pt, ax, ay, p):
    """Mixed addition pt + (ax, ay) with the second point affine."""
    X1, Y1, Z1 = pt
    if not Z1:
        return (ax, ay, mpz(1))
    ZZ = Z1 * Z1 % p
    U2 = ax * ZZ % p
    S2 = ay * ZZ % p * Z1 % p
    if U2 == X1:
        if S2 == Y1:
            return jac_double(pt, p)
        return INF
    H = (U2 - X1) % p
    HH = H * H % p
    HHH = H * HH % p
    V = X1 * HH % p
    r = (S2 - Y1) % p
    X3 = (r * r - HHH - 2 * V) % p
    Y3 = (r * (V - X3) - Y1 * HHH) % p
    Z3 = Z1 * H % p
    return (X3, Y3, Z3)


def jac_add(pt1, pt2, p):
    X1, Y1, Z1 = pt1
    X2, Y2, Z2 = pt2
    if not Z1:
        return pt2
    if not Z2:
        return pt1
    Z1Z1 = Z1 * Z1 % p
    Z2Z2 = Z2 * Z2 % p
    U1 = X1 * Z2Z2 % p
    U2 = X2 * Z1Z1 % p
    S1 = Y1 * Z2 % p * Z2Z2 % p
    S2 = Y2 * Z1 % p * Z1Z1 % p
    if U1 == U2:
        if S1 != S2:
            return INF
        return jac_double(pt1, p)
    H = (U2 - U1) % p
    I = 4 * H * H % p
    J = H * I % p
    r = 2 * (S2 - S1) % p
    V = U1 * I % p
    X3 = (r * r - J - 2 * V) % p
    Y3 = (r * (V - X3) - 2 * S1 * J) % p
    Z3 = ((Z1 + Z2) ** 2 - Z1Z1 - Z2Z2) % p * H % p
    return (X3, Y3, Z3)


def batch_normalize(points, p):
    """Jacobian -> affine for a list, sharing one field inversion."""
    live = [(i, pt) for i, pt in enumerate(points) if pt[2]]
    out = [None] * len(points)
    if not live:
        return out
    acc = mpz(1)
    prefix = []
    for _, (_, _, Z) in live:
        prefix.append(acc)
        acc = acc * Z % p
    inv = gmpy2.invert(acc, p)
    for (i, (X, Y, Z)), pre in zip(reversed(live), reversed(prefix)):
        zi = inv * pre % p
        inv = inv * Z % p
        zi2 = zi * zi % p
        out[i] = (X * zi2 % p, Y * zi2 % p * zi % p)
    return out


def jac_normalize(pt, p):
    X, Y, Z = pt
    if not Z:
        return None
    zi = gmpy2.invert(Z, p)
    zi2 = zi * zi % p
    return (X * zi2 % p, Y * zi2 % p * zi % p)


def naf_digits(k: int, w: int = 5) -> list[int]:
    """Width-w NAF of k > 0, least significant digit first."""
    digits = []
    full = 1 << w
    half = full >> 1
    while k:
        if k & 1:
            d = k & (full - 1)
            if d >= half:
                d -= full
            k -= d
        else:
            d = 0
        digits.append(d)
        k >>= 1
    return digits


def _odd_multiples(ax, ay, p, count):
    """[P, 3P, 5P, ...] as affine pairs, count entries."""
    if count == 1:
        return [(ax, ay)]
    two = jac_double((ax, ay, mpz(1)), p)
    jac = []
    cur = (ax, ay, mpz(1))
    for _ in range(count):
        jac.append(cur)
        cur = jac_add(cur, two, p)
    return batch_normalize(jac, p)


def exp_affine(ax, ay, k, p, w: int = 5):
    """k * (ax, ay); returns an affine pair or None for the identity."""
    if k == 0:
        return None
    if k < 0:
        k, ay = -k, (p - ay) % p
    digits = naf_digits(k, w)
    table = _odd_multiples(ax, ay, p, 1 << (w - 2))
    R = INF
    for d in reversed(digits):
        R = jac_double(R, p)
        if d > 0:
            tx, ty = table[(d - 1) >> 1]
            R = jac_add_affine(R, tx, ty, p)
        elif d < 0:
            tx, ty = table[(-d - 1) >> 1]
            R = jac_add_affine(R, tx, p - ty, p)
    return jac_normalize(R, p)


class CurveGroup:
    """y^2 = x^3 + b over F_p restricted to the order-n subgroup."""

    __slots__ = ("p", "n", "b", "cofactor", "tag")

    def __init__(self, p: int, n: int, b: int, cofactor: int, tag: str):
        self.p = mpz(p)
        self.n = mpz(n)
        self.b = mpz(b % p)
        self.cofactor = mpz(cofactor)
        self.tag = tag

    def __reduce__(self):
        # elements compare groups by identity, so pickling must round-trip
        # to the one canonical instance per parameter set
        return (canonical_group, (int(self.p), int(self.n), int(self.b),
                                  int(self.cofactor), self.tag))

    def identity(self) -> "GroupElement":
        return GroupElement(self, None, None)

    def element(self, x: int, y: int) -> "GroupElement":
        x, y = mpz(x % self.p), mpz(y % self.p)
        if not self.on_curve(x, y):
            raise ValueError(f"point not on curve {self.tag}")
        return GroupElement(self, x, y)

    def on_curve(self, x, y) -> bool:
        p = self.p
        return (y * y - (x * x % p * x + self.b)) % p == 0

    def lift_x(self, x):
        """y with y^2 = x^3 + b, or None; p = 3 mod 4 makes this one powmod."""
        p = self.p
        rhs = (x * x % p * x + self.b) % p
        y = gmpy2.powmod(rhs, (p + 1) >> 2, p)
        return y if y * y % p == rhs else None


_CANONICAL_GROUPS: dict[tuple, CurveGroup] = {}


def canonical_group(p: int, n: int, b: int, cofactor: int, tag: str) -> CurveGroup:
    key = (int(p), int(n), int(b) % int(p), int(cofactor), tag)
    grp = _CANONICAL_GROUPS.get(key)
    if grp is None:
        grp = CurveGroup(*key)
        _CANONICAL_GROUPS[key] = grp
    return grp


class GroupElement:
    """Point in one of the two source groups, written multiplicatively."""

    __slots__ = ("group", "x", "y")

    def __init__(self, group: CurveGroup, x, y):
        self.group = group
        self.x = x
        self.y = y

    @property
    def is_identity(self) -> bool:
        return self.x is None

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        g = self.group
        if g is not other.group:
            raise ValueError("group mismatch")
        if self.x is None:
            return other
        if other.x is None:
            return self
        pt = jac_add_affine((self.x, self.y, mpz(1)), other.x, other.y, g.p)
        aff = jac_normalize(pt, g.p)
        if aff is None:
            return GroupElement(g, None, None)
        return GroupElement(g, aff[0], aff[1])

    def __pow__(self, k: int) -> "GroupElement":
        g = self.group
        if self.x is None:
            return self
        k = int(k) % int(g.n)
        aff = exp_affine(self.x, self.y, k, g.p)
        if aff is None:
            return GroupElement(g, None, None)
        return GroupElement(g, aff[0], aff[1])

    def inv(self) -> "GroupElement":
        if self.x is None:
            return self
        return GroupElement(self.group, self.x, (self.group.p - self.y) % self.group.p)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupElement) and self.group is other.group
                and self.x == other.x and self.y == other.y)

    def __hash__(self):
        return hash((self.group.tag, int(self.x) if self.x is not None else -1,
                     int(self.y) if self.y is not None else -1))

    def __repr__(self):
        if self.x is None:
            return f"<{self.group.tag} identity>"
        return f"<{self.group.tag} x={int(self.x) & 0xffffffff:08x}...>"
