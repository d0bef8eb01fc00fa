"""Mixed-group signatures: oracle mirrors and the chaining handle."""

import dataclasses

import pytest

from proxitrace import Orientation, csig_verify, xsig_keygen, xsig_sign, xsig_verify
from proxitrace.rng import DeterministicRng
from support import oracle_pk_points, oracle_sig_points, perturb


def _twin_instance(ctx, oracle, k1, k2, seed):
    lib_rng = DeterministicRng(seed, ctx.order)
    orc_rng = DeterministicRng(seed, ctx.order)
    kp = xsig_keygen(ctx, k1, k2, lib_rng)
    okp = oracle.xsig_keygen(k1, k2, orc_rng)
    msg_rng = ctx.rng(b"xsig-msg|" + seed)
    m1_logs = [msg_rng.scalar() for _ in range(k1)]
    m2_logs = [msg_rng.scalar() for _ in range(k2)]
    m1 = [ctx.g1 ** v for v in m1_logs]
    m2 = [ctx.g2 ** v for v in m2_logs]
    return kp, okp, m1, m2, m1_logs, m2_logs


def test_keygen_matches_oracle(ctx, oracle):
    kp, okp, *_ = _twin_instance(ctx, oracle, 6, 2, b"xsig-kg")
    pk = kp.public
    assert pk.pk1.k == 7 and pk.pk2.k == 2
    assert pk.pk1.orientation is Orientation.SIGNS_G1
    assert pk.pk2.orientation is Orientation.SIGNS_G2
    for lib_pk, olog, orient in ((pk.pk1, okp["key1"], Orientation.SIGNS_G1),
                                 (pk.pk2, okp["key2"], Orientation.SIGNS_G2)):
        pts = oracle_pk_points(ctx, olog, orient)
        assert lib_pk.g_r == pts["g_r"] and lib_pk.h_u == pts["h_u"]
        assert lib_pk.g_z == pts["g_z"] and lib_pk.h_z == pts["h_z"]
        assert lib_pk.a == pts["a"] and lib_pk.b == pts["b"]
        assert tuple(lib_pk.g_i) == pts["g_i"]
        assert tuple(lib_pk.h_i) == pts["h_i"]


def test_sign_matches_oracle_and_verifies(ctx, oracle):
    kp, okp, m1, m2, m1_logs, m2_logs = _twin_instance(
        ctx, oracle, 6, 2, b"xsig-sign")
    lib_rng = DeterministicRng(b"xsig-sig-stream", ctx.order)
    orc_rng = DeterministicRng(b"xsig-sig-stream", ctx.order)
    sig = xsig_sign(kp, m1, m2, lib_rng)
    osig = oracle.xsig_sign(okp, m1_logs, m2_logs, orc_rng)
    pts1 = oracle_sig_points(ctx, osig["sig1"], Orientation.SIGNS_G1)
    pts2 = oracle_sig_points(ctx, osig["sig2"], Orientation.SIGNS_G2)
    for field in ("z", "r", "s", "t", "u", "v", "w"):
        assert getattr(sig.sig1, field) == pts1[field], f"sig1.{field}"
        assert getattr(sig.sig2, field) == pts2[field], f"sig2.{field}"
    assert xsig_verify(kp.public, m1, m2, sig)
    assert oracle.xsig_verify(okp, m1_logs, m2_logs, osig)


def test_chaining_binds_halves(ctx, oracle):
    kp, okp, m1, m2, m1_logs, m2_logs = _twin_instance(
        ctx, oracle, 2, 1, b"xsig-chain")
    rng = ctx.rng(b"xsig-chain-sign")
    sig = xsig_sign(kp, m1, m2, rng.fork(b"a"))
    # sig1 really covers m1 extended by sig2.s
    assert csig_verify(kp.public.pk1, tuple(m1) + (sig.sig2.s,), sig.sig1)
    # a second signature's halves cannot be mixed in
    other = xsig_sign(kp, m1, m2, rng.fork(b"b"))
    assert other.sig2.s != sig.sig2.s  # fresh randomness, new handle
    mixed = dataclasses.replace(sig, sig2=other.sig2)
    assert not xsig_verify(kp.public, m1, m2, mixed)
    # tampering the handle itself breaks the chain, library and oracle
    lib_rng = DeterministicRng(b"xsig-chain-twin", ctx.order)
    orc_rng = DeterministicRng(b"xsig-chain-twin", ctx.order)
    sig = xsig_sign(kp, m1, m2, lib_rng)
    osig = oracle.xsig_sign(okp, m1_logs, m2_logs, orc_rng)
    offset = rng.scalar_nonzero()
    bad2 = dataclasses.replace(sig.sig2, s=sig.sig2.s * ctx.g1 ** offset)
    obad = {"sig1": osig["sig1"],
            "sig2": dict(osig["sig2"], s=(osig["sig2"]["s"] + offset) % ctx.order)}
    assert not xsig_verify(kp.public, m1, m2, dataclasses.replace(sig, sig2=bad2))
    assert not oracle.xsig_verify(okp, m1_logs, m2_logs, obad)


def test_wrong_message_rejected(ctx):
    rng = ctx.rng(b"xsig-wrong")
    kp = xsig_keygen(ctx, 1, 1, rng.fork(b"kg"))
    m1, m2 = [ctx.g1 ** 11], [ctx.g2 ** 13]
    sig = xsig_sign(kp, m1, m2, rng.fork(b"sig"))
    assert xsig_verify(kp.public, m1, m2, sig)
    assert not xsig_verify(kp.public, [m1[0] * ctx.g1], m2, sig)
    assert not xsig_verify(kp.public, m1, [m2[0] * ctx.g2], sig)


def test_shapes_and_validation(ctx):
    rng = ctx.rng(b"xsig-shapes")
    for k1, k2 in ((1, 0), (0, 1), (3, 2)):
        kp = xsig_keygen(ctx, k1, k2, rng.fork(b"%d-%d" % (k1, k2)))
        m1 = [ctx.g1 ** (i + 2) for i in range(k1)]
        m2 = [ctx.g2 ** (i + 5) for i in range(k2)]
        sig = xsig_sign(kp, m1, m2, rng.fork(b"s%d%d" % (k1, k2)))
        assert xsig_verify(kp.public, m1, m2, sig)
    with pytest.raises(ValueError):
        xsig_keygen(ctx, -1, 2, rng.fork(b"neg"))
    with pytest.raises(ValueError):
        xsig_keygen(ctx, 0, 0, rng.fork(b"zero"))
    kp = xsig_keygen(ctx, 1, 1, rng.fork(b"val"))
    with pytest.raises(ValueError):
        xsig_sign(kp, [], [ctx.g2], rng.fork(b"lm"))
    sig = xsig_sign(kp, [ctx.g1], [ctx.g2], rng.fork(b"ok"))
    with pytest.raises(ValueError):
        xsig_verify(kp.public, [ctx.g1, ctx.g1], [ctx.g2], sig)


def test_component_perturbation_rejected(ctx):
    rng = ctx.rng(b"xsig-perturb")
    kp = xsig_keygen(ctx, 1, 1, rng.fork(b"kg"))
    m1, m2 = [ctx.g1 ** 3], [ctx.g2 ** 4]
    sig = xsig_sign(kp, m1, m2, rng.fork(b"sig"))
    bad1 = dataclasses.replace(sig.sig1, t=perturb(ctx, sig.sig1.t, rng.fork(b"t")))
    assert not xsig_verify(kp.public, m1, m2, dataclasses.replace(sig, sig1=bad1))
    bad2 = dataclasses.replace(sig.sig2, w=perturb(ctx, sig.sig2.w, rng.fork(b"w")))
    assert not xsig_verify(kp.public, m1, m2, dataclasses.replace(sig, sig2=bad2))
