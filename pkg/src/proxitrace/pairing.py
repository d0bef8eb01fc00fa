"""Bilinear pairing context: groups, Tate pairing, hashing, encoding.

The pairing is the reduced Tate pairing on a Cocks-Pinch curve with
embedding degree 2 (see params).  Points of the second group live on
the quadratic twist over the base field, so their arithmetic stays in
F_p; the pairing maps them through the twist isomorphism
(x, y) -> (-x, i*y) into E(F_p^2).  Target-group values are norm-1
elements of F_p^2 = F_p(i), where conjugation inverts for free.

Miller loops share one accumulator across a whole pairing product and
one final exponentiation, and lines for a fixed first argument can be
precomputed once and replayed against many second arguments.
"""

from __future__ import annotations

import hashlib

import gmpy2

from .groups import (CurveGroup, GroupElement, INF, canonical_group, jac_normalize, naf_digits,
                     exp_affine)
from .params import BY_LEVEL
from .rng import DeterministicRng

mpz = gmpy2.mpz


class GtElement:
    """Norm-1 element of F_p^2, member of the order-n target group."""

    __slots__ = ("ctx", "c0", "c1")

    def __init__(self, ctx: "PairingContext", c0, c1):
        self.ctx = ctx
        self.c0 = c0
        self.c1 = c1

    @property
    def is_one(self) -> bool:
        return self.c0 == 1 and self.c1 == 0

    def __mul__(self, other: "GtElement") -> "GtElement":
        p = self.ctx.p
        a0, a1, b0, b1 = self.c0, self.c1, other.c0, other.c1
        t0 = a0 * b0 % p
        t1 = a1 * b1 % p
        mid = (a0 + a1) * (b0 + b1) % p
        return GtElement(self.ctx, (t0 - t1) % p, (mid - t0 - t1) % p)

    def inv(self) -> "GtElement":
        return GtElement(self.ctx, self.c0, (-self.c1) % self.ctx.p)

    def __pow__(self, k: int) -> "GtElement":
        k = int(k) % int(self.ctx.n)
        if k == 0:
            return GtElement(self.ctx, mpz(1), mpz(0))
        c0, c1 = _cyclo_pow(self.c0, self.c1, naf_digits(k, 2), self.ctx.p)
        return GtElement(self.ctx, c0, c1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GtElement) and self.c0 == other.c0
                and self.c1 == other.c1)

    def __hash__(self):
        return hash((int(self.c0), int(self.c1)))

    def __repr__(self):
        return f"<gt {int(self.c0) & 0xffffffff:08x}...>"


def _cyclo_pow(g0, g1, digits, p):
    """(g0 + g1*i)^k for norm-1 inputs, NAF digits LSB first."""
    i0, i1 = g0, (-g1) % p
    r0, r1 = (g0, g1) if digits[-1] == 1 else (i0, i1)
    for d in reversed(digits[:-1]):
        # norm-1 squaring: (2c0^2 - 1, 2c0c1)
        r0, r1 = (2 * r0 * r0 - 1) % p, 2 * r0 * r1 % p
        if d:
            b0, b1 = (g0, g1) if d > 0 else (i0, i1)
            t0 = r0 * b0 % p
            t1 = r1 * b1 % p
            mid = (r0 + r1) * (b0 + b1) % p
            r0, r1 = (t0 - t1) % p, (mid - t0 - t1) % p
    return r0, r1


class MillerTable:
    """Precomputed line coefficients for a fixed first pairing argument.

    Entries are (const, xq_coef, imag_coef) triples consumed in loop
    order; evaluating one line at a point of the second group costs two
    field multiplications instead of a full curve step.
    """

    __slots__ = ("triples",)

    def __init__(self, triples):
        self.triples = triples


class PairingContext:
    """Shared curve state plus the pairing, hashing and codec surface."""

    def __init__(self, security_level: int, seed: bytes | str = b""):
        if security_level not in BY_LEVEL:
            raise ValueError(f"unsupported security level {security_level}")
        if isinstance(seed, str):
            seed = seed.encode()
        c = BY_LEVEL[security_level]
        self.security_level = security_level
        self.seed = bytes(seed)
        self.p = mpz(c.p)
        self.n = mpz(c.n)
        self.g1_group = canonical_group(c.p, c.n, c.b, c.h1, "g1")
        self.g2_group = canonical_group(c.p, c.n, (-c.b) % c.p, c.h2, "g2")
        self.g1 = self.g1_group.element(*c.g1)
        self.g2 = self.g2_group.element(*c.g2)
        self.scalar_bytes = (int(c.n).bit_length() + 7) // 8
        self.point_bytes = (int(c.p).bit_length() + 7) // 8
        self._domain = b"proxitrace/l%d" % security_level
        # MSB-first Miller digits below the leading 1, and final-exp digits
        self._miller_digits = tuple(reversed(naf_digits(int(c.n), 2)[:-1]))
        self._finexp_digits = naf_digits(int(c.p + 1) // int(c.n), 2)
        self._gt = None

    def __reduce__(self):
        # contexts are compared by identity; round-trip through the
        # module cache so unpickling yields the canonical instance
        return (setup_params, (self.security_level, self.seed))

    # -- basics ------------------------------------------------------

    @property
    def order(self) -> int:
        return int(self.n)

    def gt(self) -> GtElement:
        if self._gt is None:
            self._gt = self.pair(self.g1, self.g2)
        return self._gt

    def gt_one(self) -> GtElement:
        return GtElement(self, mpz(1), mpz(0))

    def rng(self, label: bytes | str) -> DeterministicRng:
        if isinstance(label, str):
            label = label.encode()
        return DeterministicRng(self._domain + b"|" + self.seed + b"|" + bytes(label),
                                int(self.n))

    # -- pairing -----------------------------------------------------

    def pair(self, a: GroupElement, b: GroupElement) -> GtElement:
        return self.multi_pair([(a, b)])

    def multi_pair(self, pairs, tables=()) -> GtElement:
        """Product of pairings with one shared loop and final exponentiation.

        pairs: iterable of (G1 element, G2 element); tables: iterable of
        (MillerTable, G2 element) for precomputed first arguments.
        """
        f0, f1 = self._miller(pairs, tables)
        return self._final_exp(f0, f1)

    def pair_check(self, pairs, target: GtElement | None = None, tables=()) -> bool:
        z = self.multi_pair(pairs, tables)
        if target is None:
            return z.is_one
        return z == target

    def _check_args(self, a: GroupElement, b: GroupElement):
        if a.group is not self.g1_group or b.group is not self.g2_group:
            raise ValueError("pairing arguments must be (G1, G2)")

    def _miller(self, pairs, tables):
        p = self.p
        dyn = []
        for a, b in pairs:
            self._check_args(a, b)
            if a.is_identity or b.is_identity:
                continue
            xq = (-b.x) % p           # twist image: x-coordinate in F_p
            yq = b.y                  # imaginary coefficient of y
            # state: [V, px, py, xq, yq, px - xq]
            dyn.append([(a.x, a.y, mpz(1)), a.x, a.y, xq, yq, (a.x - xq) % p])
        tab = []
        for table, b in tables:
            if table is None or b.is_identity:
                continue
            if b.group is not self.g2_group:
                raise ValueError("pairing arguments must be (G1, G2)")
            tab.append([iter(table.triples), (-b.x) % p, b.y])
        f0, f1 = mpz(1), mpz(0)
        if not dyn and not tab:
            return f0, f1
        for d in self._miller_digits:
            # f <- f^2
            f0, f1 = (f0 * f0 - f1 * f1) % p, 2 * f0 * f1 % p
            for st in dyn:
                X, Y, Z = st[0]
                XX = X * X % p
                YY = Y * Y % p
                YYYY = YY * YY % p
                ZZ = Z * Z % p
                S = 2 * ((X + YY) ** 2 - XX - YYYY) % p
                M = 3 * XX % p
                X3 = (M * M - 2 * S) % p
                Y3 = (M * (S - X3) - 8 * YYYY) % p
                Z3 = ((Y + Z) ** 2 - YY - ZZ) % p
                st[0] = (X3, Y3, Z3)
                e0 = (M * (X - ZZ * st[3]) - 2 * YY) % p
                e1 = Z3 * ZZ % p * st[4] % p
                f0, f1 = (f0 * e0 - f1 * e1) % p, (f0 * e1 + f1 * e0) % p
            for st in tab:
                c, xc, ic = next(st[0])
                e0 = (c + xc * st[1]) % p
                e1 = ic * st[2] % p
                f0, f1 = (f0 * e0 - f1 * e1) % p, (f0 * e1 + f1 * e0) % p
            if d:
                for st in dyn:
                    X1, Y1, Z1 = st[0]
                    ay = st[2] if d > 0 else (p - st[2])
                    if not Z1:
                        st[0] = (st[1], ay, mpz(1))
                        continue
                    ZZ = Z1 * Z1 % p
                    U2 = st[1] * ZZ % p
                    S2 = ay * ZZ % p * Z1 % p
                    if U2 == X1:
                        if S2 == Y1:
                            raise ArithmeticError("unexpected doubling in Miller loop")
                        st[0] = INF   # vertical line, dropped by final exp
                        continue
                    H = (U2 - X1) % p
                    HH = H * H % p
                    HHH = H * HH % p
                    V = X1 * HH % p
                    r = (S2 - Y1) % p
                    X3 = (r * r - HHH - 2 * V) % p
                    Y3 = (r * (V - X3) - Y1 * HHH) % p
                    Z3 = Z1 * H % p
                    st[0] = (X3, Y3, Z3)
                    if d > 0:
                        e0 = (r * st[5] - Z3 * ay) % p
                    else:
                        e0 = (r * (st[1] - st[3]) - Z3 * ay) % p
                    e1 = Z3 * st[4] % p
                    f0, f1 = (f0 * e0 - f1 * e1) % p, (f0 * e1 + f1 * e0) % p
                for st in tab:
                    c, xc, ic = next(st[0])
                    e0 = (c + xc * st[1]) % p
                    e1 = ic * st[2] % p
                    f0, f1 = (f0 * e0 - f1 * e1) % p, (f0 * e1 + f1 * e0) % p
        return f0, f1

    def _final_exp(self, f0, f1) -> GtElement:
        p = self.p
        if f1 == 0:
            # value already in F_p, wiped by the easy part
            return GtElement(self, mpz(1), mpz(0))
        # f^(p-1) = conj(f)/f = conj(f)^2 / norm(f)
        norm = (f0 * f0 + f1 * f1) % p
        ni = gmpy2.invert(norm, p)
        g0 = (f0 * f0 - f1 * f1) % p * ni % p
        g1 = (-2 * f0 * f1) % p * ni % p
        if g0 == 1 and g1 == 0:
            return GtElement(self, mpz(1), mpz(0))
        c0, c1 = _cyclo_pow(g0, g1, self._finexp_digits, p)
        return GtElement(self, c0, c1)

    def precompute_g1(self, a: GroupElement) -> MillerTable | None:
        """Record the Miller lines of a fixed G1 argument for reuse."""
        if a.is_identity:
            return None
        p = self.p
        V = (a.x, a.y, mpz(1))
        px, py = a.x, a.y
        triples = []
        for d in self._miller_digits:
            X, Y, Z = V
            XX = X * X % p
            YY = Y * Y % p
            YYYY = YY * YY % p
            ZZ = Z * Z % p
            S = 2 * ((X + YY) ** 2 - XX - YYYY) % p
            M = 3 * XX % p
            X3 = (M * M - 2 * S) % p
            Y3 = (M * (S - X3) - 8 * YYYY) % p
            Z3 = ((Y + Z) ** 2 - YY - ZZ) % p
            V = (X3, Y3, Z3)
            triples.append(((M * X - 2 * YY) % p, (-(M * ZZ)) % p, Z3 * ZZ % p))
            if d:
                X1, Y1, Z1 = V
                ay = py if d > 0 else (p - py)
                ZZ = Z1 * Z1 % p
                U2 = px * ZZ % p
                S2 = ay * ZZ % p * Z1 % p
                if U2 == X1:
                    V = INF
                    triples.append((mpz(1), mpz(0), mpz(0)))   # dropped vertical
                    continue
                H = (U2 - X1) % p
                HH = H * H % p
                HHH = H * HH % p
                Vv = X1 * HH % p
                r = (S2 - Y1) % p
                X3 = (r * r - HHH - 2 * Vv) % p
                Y3 = (r * (Vv - X3) - Y1 * HHH) % p
                Z3 = Z1 * H % p
                V = (X3, Y3, Z3)
                triples.append(((r * px - Z3 * ay) % p, (-r) % p, Z3 % p))
        return MillerTable(tuple(triples))

    # -- hashing -----------------------------------------------------

    def hash_to_scalar(self, data: bytes, domain: bytes = b"") -> int:
        h = hashlib.shake_256(b"h2s/v1|" + self._domain + b"|" + domain + b"|" + data)
        return int.from_bytes(h.digest(self.scalar_bytes + 16), "big") % int(self.n)

    def hash_to_g1(self, data: bytes, domain: bytes = b"") -> GroupElement:
        """Try-and-increment onto the curve, then cofactor clearing."""
        p = self.p
        ctr = 0
        while True:
            h = hashlib.shake_256(b"h2g1/v1|" + self._domain + b"|" + domain
                                  + b"|" + ctr.to_bytes(4, "big") + b"|" + data)
            x = mpz(int.from_bytes(h.digest(self.point_bytes + 16), "big") % p)
            y = self.g1_group.lift_x(x)
            if y is not None:
                aff = exp_affine(x, min(y, p - y), int(self.g1_group.cofactor), p)
                if aff is not None:
                    return GroupElement(self.g1_group, aff[0], aff[1])
            ctr += 1

    # -- encoding ----------------------------------------------------

    def encode_scalar(self, v: int) -> bytes:
        return (int(v) % int(self.n)).to_bytes(self.scalar_bytes, "big")

    def decode_scalar(self, data: bytes) -> int:
        if len(data) != self.scalar_bytes:
            raise ValueError("bad scalar length")
        v = int.from_bytes(data, "big")
        if v >= int(self.n):
            raise ValueError("scalar out of range")
        return v

    def encode_point(self, el: GroupElement) -> bytes:
        if el.group is self.g1_group:
            return self._encode(el)
        if el.group is self.g2_group:
            return self._encode(el)
        raise ValueError("element not from this context")

    def _encode(self, el: GroupElement) -> bytes:
        if el.is_identity:
            return b"\x00" + bytes(self.point_bytes)
        pre = b"\x03" if int(el.y) & 1 else b"\x02"
        return pre + int(el.x).to_bytes(self.point_bytes, "big")

    def encode_g1(self, el: GroupElement) -> bytes:
        if el.group is not self.g1_group:
            raise ValueError("not a G1 element")
        return self._encode(el)

    def encode_g2(self, el: GroupElement) -> bytes:
        if el.group is not self.g2_group:
            raise ValueError("not a G2 element")
        return self._encode(el)

    def _decode(self, group: CurveGroup, data: bytes) -> GroupElement:
        if len(data) != 1 + self.point_bytes:
            raise ValueError("bad point length")
        if data[0] == 0:
            if any(data[1:]):
                raise ValueError("bad identity encoding")
            return GroupElement(group, None, None)
        if data[0] not in (2, 3):
            raise ValueError("bad point prefix")
        x = mpz(int.from_bytes(data[1:], "big"))
        if x >= self.p:
            raise ValueError("coordinate out of range")
        y = group.lift_x(x)
        if y is None:
            raise ValueError("x not on curve")
        if (int(y) & 1) != (data[0] & 1):
            y = (self.p - y) % self.p
        if exp_affine(x, y, int(self.n), self.p) is not None:
            raise ValueError("point outside the prime-order subgroup")
        return GroupElement(group, x, y)

    def decode_g1(self, data: bytes) -> GroupElement:
        return self._decode(self.g1_group, data)

    def decode_g2(self, data: bytes) -> GroupElement:
        return self._decode(self.g2_group, data)

    def encode_gt(self, el: GtElement) -> bytes:
        return (int(el.c0).to_bytes(self.point_bytes, "big")
                + int(el.c1).to_bytes(self.point_bytes, "big"))

    def decode_gt(self, data: bytes) -> GtElement:
        if len(data) != 2 * self.point_bytes:
            raise ValueError("bad target-group length")
        c0 = mpz(int.from_bytes(data[:self.point_bytes], "big"))
        c1 = mpz(int.from_bytes(data[self.point_bytes:], "big"))
        p = self.p
        if c0 >= p or c1 >= p:
            raise ValueError("coordinate out of range")
        if (c0 * c0 + c1 * c1) % p != 1:
            raise ValueError("value outside the unit-norm subgroup")
        el = GtElement(self, c0, c1)
        if not (el ** int(self.n)).is_one:
            raise ValueError("value outside the order-n subgroup")
        return el


_CTX_CACHE: dict[tuple[int, bytes], PairingContext] = {}


def setup_params(security_level: int, seed: bytes | str = b"") -> PairingContext:
    """Deterministic context for a security level; seed scopes rng forks."""
    if isinstance(seed, str):
        seed = seed.encode()
    key = (security_level, bytes(seed))
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = PairingContext(security_level, seed)
        _CTX_CACHE[key] = ctx
    return ctx
