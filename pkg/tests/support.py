"""Shared helpers: known-exponent instance builders for the test suite.

Everything here works from explicit discrete logs so tests can compare
library group elements against generator powers and pairing verdicts
against scalar arithmetic.
"""

from __future__ import annotations

from proxitrace import PairingProductEquation, NiwiWitness
from proxitrace.oracle import KnownExponentOracle
from proxitrace.rng import DeterministicRng


def random_equation_system(ctx, rng: DeterministicRng, eq_count: int,
                           max_vars: int = 3):
    """Satisfiable pairing-product system with known witness logs.

    Returns (equations, witness, oracle_eqs, logs) where oracle_eqs and
    logs express the same system over scalars for the oracle.
    """
    n = ctx.order
    x_count = 1 + rng.randbits(8) % max_vars
    y_count = 1 + rng.randbits(8) % max_vars
    x_names = tuple(f"x{i}" for i in range(x_count))
    y_names = tuple(f"y{j}" for j in range(y_count))
    x_logs = {name: rng.scalar() for name in x_names}
    y_logs = {name: rng.scalar() for name in y_names}
    witness = NiwiWitness(x={name: ctx.g1 ** v for name, v in x_logs.items()},
                          y={name: ctx.g2 ** v for name, v in y_logs.items()})

    equations = []
    oracle_eqs = []
    for _ in range(eq_count):
        a_logs = {name: rng.scalar() for name in y_names}
        b_logs = {name: rng.scalar() for name in x_names}
        gamma = {xn: {yn: rng.scalar() % 3 - 1 for yn in y_names}
                 for xn in x_names}
        t_log = 0
        for yn in y_names:
            t_log += a_logs[yn] * y_logs[yn]
        for xn in x_names:
            t_log += x_logs[xn] * b_logs[xn]
            for yn in y_names:
                t_log += gamma[xn][yn] * x_logs[xn] * y_logs[yn]
        t_log %= n
        equations.append(PairingProductEquation(
            x_names=x_names, y_names=y_names,
            a=tuple(ctx.g1 ** a_logs[yn] for yn in y_names),
            b=tuple(ctx.g2 ** b_logs[xn] for xn in x_names),
            gamma=tuple(tuple(gamma[xn][yn] for yn in y_names)
                        for xn in x_names),
            target=ctx.gt() ** t_log))
        oracle_eqs.append({"x_names": x_names, "y_names": y_names,
                           "a": a_logs, "b": b_logs, "gamma": gamma,
                           "t": t_log})
    return equations, witness, oracle_eqs, {"x": x_logs, "y": y_logs}


def oracle_pk_points(ctx, opk: dict, orientation):
    """Group-element view of an oracle csig public key, for comparisons."""
    from proxitrace import Orientation
    base = ctx.g1 if orientation is Orientation.SIGNS_G2 else ctx.g2
    msg = ctx.g2 if orientation is Orientation.SIGNS_G2 else ctx.g1
    return {
        "g_z": base ** opk["g_z"], "h_z": base ** opk["h_z"],
        "g_r": base ** opk["g_r"], "h_u": base ** opk["h_u"],
        "a": msg ** opk["a"], "b": msg ** opk["b"],
        "g_i": tuple(base ** v for v in opk["g_i"]),
        "h_i": tuple(base ** v for v in opk["h_i"]),
    }


def oracle_sig_points(ctx, osig: dict, orientation):
    from proxitrace import Orientation
    base = ctx.g1 if orientation is Orientation.SIGNS_G2 else ctx.g2
    msg = ctx.g2 if orientation is Orientation.SIGNS_G2 else ctx.g1
    return {
        "z": msg ** osig["z"], "r": msg ** osig["r"], "s": base ** osig["s"],
        "t": msg ** osig["t"], "u": msg ** osig["u"], "v": base ** osig["v"],
        "w": msg ** osig["w"],
    }


def perturb(ctx, element, rng: DeterministicRng):
    """Multiply a group element by a random non-identity generator power."""
    gen = ctx.g1 if element.group is ctx.g1_group else ctx.g2
    return element * gen ** rng.scalar_nonzero()


def assert_twin_csig(ctx, oracle: KnownExponentOracle, k: int, orientation,
                     seed: bytes):
    """Run library and oracle keygen/sign on twin rng streams and assert
    every element equals the generator power of its mirrored log.
    Returns (sk, pk, opk) for further use."""
    from proxitrace import csig_keygen
    lib_rng = DeterministicRng(seed, ctx.order)
    orc_rng = DeterministicRng(seed, ctx.order)
    sk, pk = csig_keygen(ctx, k, orientation, lib_rng)
    opk = oracle.csig_keygen(k, orc_rng)
    pts = oracle_pk_points(ctx, opk, orientation)
    assert pk.g_z == pts["g_z"] and pk.h_z == pts["h_z"]
    assert pk.g_r == pts["g_r"] and pk.h_u == pts["h_u"]
    assert pk.a == pts["a"] and pk.b == pts["b"]
    assert tuple(pk.g_i) == pts["g_i"] and tuple(pk.h_i) == pts["h_i"]
    return sk, pk, opk
