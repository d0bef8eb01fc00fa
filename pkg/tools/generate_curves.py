"""One-time generator for the frozen pairing curve constants.

Produces Cocks-Pinch curves with embedding degree 2 and CM discriminant -3:
E: y^2 = x^3 + b over F_p with an order-n subgroup, n | p + 1, and the
second pairing group on the quadratic twist E': y^2 = x^3 - b over F_p.
p = 3 mod 4 throughout so F_p^2 = F_p(i) and square roots cost one
exponentiation.

Run `python tools/generate_curves.py` and paste the output into
src/proxitrace/params.py.  The search is deterministic, so the frozen
constants can be re-derived at any time.
"""

import hashlib

import gmpy2
from sympy.ntheory.residue_ntheory import sqrt_mod


def _jac_double(X, Y, Z, p):
    if Z == 0 or Y == 0:
        return (gmpy2.mpz(1), gmpy2.mpz(1), gmpy2.mpz(0))
    XX = X * X % p
    YY = Y * Y % p
    YYYY = YY * YY % p
    S = 2 * ((X + YY) ** 2 - XX - YYYY) % p
    M = 3 * XX % p
    X2 = (M * M - 2 * S) % p
    Y2 = (M * (S - X2) - 8 * YYYY) % p
    Z2 = ((Y + Z) ** 2 - YY - Z * Z % p) % p
    return (X2, Y2, Z2 % p)


def _jac_add_affine(X1, Y1, Z1, x2, y2, p):
    if Z1 == 0:
        return (gmpy2.mpz(x2), gmpy2.mpz(y2), gmpy2.mpz(1))
    ZZ = Z1 * Z1 % p
    U2 = x2 * ZZ % p
    S2 = y2 * ZZ % p * Z1 % p
    if U2 == X1:
        if S2 == Y1 % p:
            return _jac_double(X1, Y1, Z1, p)
        return (gmpy2.mpz(1), gmpy2.mpz(1), gmpy2.mpz(0))
    H = (U2 - X1) % p
    HH = H * H % p
    HHH = H * HH % p
    r = (S2 - Y1) % p
    V = X1 * HH % p
    X3 = (r * r - HHH - 2 * V) % p
    Y3 = (r * (V - X3) - Y1 * HHH) % p
    Z3 = Z1 * H % p
    return (X3, Y3, Z3)


def _mul(x, y, k, p):
    """k * (x, y) on y^2 = x^3 + b, returns None for the identity."""
    R = (gmpy2.mpz(1), gmpy2.mpz(1), gmpy2.mpz(0))
    P = (gmpy2.mpz(x), gmpy2.mpz(y), gmpy2.mpz(1))
    for bit in bin(int(k))[2:]:
        R = _jac_double(*R, p)
        if bit == "1":
            if R[2] == 0:
                R = P
            else:
                R = _jac_add_affine(*R, P[0], P[1], p)
    if R[2] == 0:
        return None
    zi = gmpy2.invert(R[2], p)
    zi2 = zi * zi % p
    return (R[0] * zi2 % p, R[1] * zi2 % p * zi % p)


def _sqrt(a, p):
    """Square root mod p = 3 mod 4, or None."""
    r = gmpy2.powmod(a, (p + 1) // 4, p)
    return r if r * r % p == a % p else None


def _point_from_counter(tag, b, p, pbytes):
    ctr = 0
    while True:
        h = hashlib.shake_256(tag + ctr.to_bytes(4, "big")).digest(pbytes + 16)
        x = gmpy2.mpz(int.from_bytes(h, "big") % p)
        y = _sqrt((x * x % p * x + b) % p, p)
        if y is not None:
            return x, min(y, p - y), ctr
        ctr += 1


def find_curve(label, nbits, pbits):
    # subgroup order: first prime = 1 mod 3 at the fixed starting point
    n = gmpy2.mpz(2) ** (nbits - 1) + gmpy2.mpz(2) ** (nbits - 2) + 1
    n = gmpy2.next_prime(n)
    while n % 3 != 1:
        n = gmpy2.next_prime(n)

    s3 = int(sqrt_mod(-3, int(n)))
    s3 = min(s3, int(n) - s3)
    y0 = (-2 * gmpy2.invert(s3, n)) % n

    # CM lift: t = n (odd), y = y0 + j*n odd, p = (t^2 + 3y^2)/4
    t = n
    y_lo = gmpy2.isqrt((4 * gmpy2.mpz(2) ** (pbits - 1) - t * t) // 3)
    j = (y_lo - y0) // n
    while True:
        y = y0 + j * n
        j += 1
        if y % 2 == 0:
            continue
        num = t * t + 3 * y * y
        if num % 4:
            continue
        p = num // 4
        if p.bit_length() != pbits:
            if p.bit_length() > pbits:
                raise RuntimeError("window exhausted for " + label)
            continue
        if p % 4 != 3:
            continue
        if gmpy2.is_prime(p):
            break

    assert (p + 1) % n == 0

    # locate the twist of y^2 = x^3 + b with trace +-t
    trace = None
    for b in range(1, 400):
        xx = 1
        while True:
            rhs = (gmpy2.mpz(xx) ** 3 + b) % p
            yy = _sqrt(rhs, p)
            if yy is not None:
                break
            xx += 1
        ok_plus = _mul(xx, yy, p + 1 - t, p) is None
        ok_minus = _mul(xx, yy, p + 1 + t, p) is None
        if ok_plus or ok_minus:
            cand = t if ok_plus else -t
            # confirm on a second point
            x2, y2c, _ = _point_from_counter(b"confirm" + bytes([b & 0xFF]), b, p, pbits // 8)
            if _mul(x2, y2c, p + 1 - cand, p) is None:
                trace = cand
                break
    if trace is None:
        raise RuntimeError("no twist with trace +-t found for " + label)

    h1 = (p + 1 - trace) // n
    h2 = (p + 1 + trace) // n
    assert h1 * n == p + 1 - trace and h2 * n == p + 1 + trace
    assert h1 % n and h2 % n

    pbytes = (pbits + 7) // 8
    # generator of the order-n subgroup of E(F_p)
    while True:
        x, yv, ctr1 = _point_from_counter(b"proxitrace/base/" + label.encode(), b, p, pbytes)
        g1 = _mul(x, yv, h1, p)
        if g1 is not None:
            break
    assert _mul(g1[0], g1[1], n, p) is None

    # generator on the quadratic twist y^2 = x^3 - b
    bt = (-b) % p
    while True:
        x, yv, ctr2 = _point_from_counter(b"proxitrace/twist/" + label.encode(), bt, p, pbytes)
        g2 = _mul(x, yv, h2, p)
        if g2 is not None:
            break
    assert _mul(g2[0], g2[1], n, p) is None

    return {
        "label": label, "nbits": nbits, "pbits": pbits,
        "p": int(p), "n": int(n), "b": b, "trace": int(trace),
        "h1": int(h1), "h2": int(h2),
        "g1": (int(g1[0]), int(g1[1])), "g2": (int(g2[0]), int(g2[1])),
        "ctr": (ctr1, ctr2),
    }


def main():
    for label, nbits, pbits in (("112", 224, 1024), ("128", 256, 1536)):
        c = find_curve(label, nbits, pbits)
        print(f"# level {label}: b={c['b']} hash counters={c['ctr']}")
        print(f"_P_{label} = {c['p']}")
        print(f"_N_{label} = {c['n']}")
        print(f"_B_{label} = {c['b']}")
        print(f"_T_{label} = {c['trace']}")
        print(f"_H1_{label} = {c['h1']}")
        print(f"_H2_{label} = {c['h2']}")
        print(f"_G1_{label} = {c['g1']}")
        print(f"_G2_{label} = {c['g2']}")
        print()


if __name__ == "__main__":
    main()
