"""Proxy group signatures: membership proof over a certified key."""

import pytest

from proxitrace import (X_VARS, Y_VARS, GroupSignature, NiwiProof, gsig_join,
                        gsig_setup, gsig_sign, gsig_verify)
from proxitrace.rng import DeterministicRng
from support import perturb


def test_round_trip(ctx, proxy_group):
    gm, vk, cred = proxy_group
    rng = ctx.rng(b"gsig-roundtrip")
    m = ctx.g2 ** rng.scalar_nonzero()
    sig_m, sig = gsig_sign(vk, cred, m, rng.fork(b"sig"))
    assert gsig_verify(vk, m, sig)
    assert not gsig_verify(vk, m * ctx.g2, sig)


def test_statement_shape(ctx, proxy_group):
    gm, vk, cred = proxy_group
    rng = ctx.rng(b"gsig-shape")
    m = ctx.g2 ** rng.scalar_nonzero()
    _, sig = gsig_sign(vk, cred, m, rng.fork(b"sig"))
    assert set(sig.proof.c) == set(X_VARS) and len(X_VARS) == 15
    assert set(sig.proof.d) == set(Y_VARS) and len(Y_VARS) == 14
    assert len(sig.proof.pairs) == 6


def test_precomputed_tables_same_verdict(ctx, proxy_group):
    gm, vk, cred = proxy_group
    rng = ctx.rng(b"gsig-tables")
    m = ctx.g2 ** rng.scalar_nonzero()
    _, sig = gsig_sign(vk, cred, m, rng.fork(b"sig"))
    assert gsig_verify(vk, m, sig, precomputed=True)
    assert gsig_verify(vk, m, sig, precomputed=False)
    pi0, theta0 = sig.proof.pairs[0]
    bad = GroupSignature(proof=NiwiProof(
        c=dict(sig.proof.c), d=dict(sig.proof.d),
        pairs=((perturb(ctx, pi0, rng.fork(b"pi")), theta0),)
        + sig.proof.pairs[1:]))
    assert not gsig_verify(vk, m, bad, precomputed=True)
    assert not gsig_verify(vk, m, bad, precomputed=False)


def test_tampered_commitments_rejected(ctx, proxy_group):
    gm, vk, cred = proxy_group
    rng = ctx.rng(b"gsig-tamper")
    m = ctx.g2 ** rng.scalar_nonzero()
    _, sig = gsig_sign(vk, cred, m, rng.fork(b"sig"))
    for name in ("pk.gr", "sm.s"):
        bad_c = dict(sig.proof.c)
        bad_c[name] = perturb(ctx, bad_c[name], rng.fork(name.encode()))
        bad = GroupSignature(proof=NiwiProof(c=bad_c, d=dict(sig.proof.d),
                                             pairs=sig.proof.pairs))
        assert not gsig_verify(vk, m, bad, precomputed=True), name
    for name in ("pk.a", "sm.z"):
        bad_d = dict(sig.proof.d)
        bad_d[name] = perturb(ctx, bad_d[name], rng.fork(name.encode()))
        bad = GroupSignature(proof=NiwiProof(c=dict(sig.proof.c), d=bad_d,
                                             pairs=sig.proof.pairs))
        assert not gsig_verify(vk, m, bad, precomputed=True), name


def test_signatures_from_two_members_both_verify(ctx, proxy_group):
    gm, vk, cred = proxy_group
    rng = ctx.rng(b"gsig-two-members")
    other = gsig_join(gm, ctx, rng.fork(b"other"))
    m = ctx.g2 ** rng.scalar_nonzero()
    _, sig_a = gsig_sign(vk, cred, m, rng.fork(b"a"))
    _, sig_b = gsig_sign(vk, other, m, rng.fork(b"b"))
    assert gsig_verify(vk, m, sig_a)
    assert gsig_verify(vk, m, sig_b)
    # same statement, different members: commitments must differ
    assert any(sig_a.proof.c[k] != sig_b.proof.c[k] for k in X_VARS)


def test_foreign_credential_refused(ctx, proxy_group):
    gm, vk, cred = proxy_group
    rng = ctx.rng(b"gsig-foreign")
    other_gm, other_vk = gsig_setup(ctx, rng.fork(b"setup"))
    foreign = gsig_join(other_gm, ctx, rng.fork(b"join"))
    m = ctx.g2 ** rng.scalar_nonzero()
    with pytest.raises(ValueError, match="does not certify"):
        gsig_sign(vk, foreign, m, rng.fork(b"sig"))
    # and a signature from the foreign group fails under this group's key
    _, sig = gsig_sign(other_vk, foreign, m, rng.fork(b"ok"))
    assert gsig_verify(other_vk, m, sig)
    assert not gsig_verify(vk, m, sig)


def test_input_validation(ctx, proxy_group):
    gm, vk, cred = proxy_group
    rng = ctx.rng(b"gsig-validate")
    with pytest.raises(ValueError, match="second-group"):
        gsig_sign(vk, cred, ctx.g1, rng.fork(b"m"))
    m = ctx.g2 ** 5
    _, sig = gsig_sign(vk, cred, m, rng.fork(b"sig"))
    with pytest.raises(ValueError, match="second-group"):
        gsig_verify(vk, ctx.g1, sig)
    short = dict(sig.proof.c)
    short.pop("pk.gr")
    with pytest.raises(ValueError, match="statement shape"):
        gsig_verify(vk, m, GroupSignature(proof=NiwiProof(
            c=short, d=sig.proof.d, pairs=sig.proof.pairs)))


def test_deterministic_for_fixed_stream(ctx, proxy_group):
    gm, vk, cred = proxy_group
    m = ctx.g2 ** 42
    a_m, a = gsig_sign(vk, cred, m, DeterministicRng(b"fix", ctx.order))
    b_m, b = gsig_sign(vk, cred, m, DeterministicRng(b"fix", ctx.order))
    assert a_m == b_m
    assert a.proof.c == b.proof.c and a.proof.d == b.proof.d
    assert a.proof.pairs == b.proof.pairs
