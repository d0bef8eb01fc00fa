"""Serialization: codec round-trips, envelope validation, wire sizes."""

import json

import pytest

from proxitrace import (ContactEntry, Orientation, ProtocolConfig,
                        ProxyRoster, csig_keygen, csig_sign, gsig_join,
                        gsig_setup, gsig_sign, gsig_verify, ha_keygen,
                        ha_publish, ha_verify_contact_list, niwi_verify,
                        p_sign, s_keygen, s_psign, server_ingest, set_ccm,
                        set_user_id, sig_verify, user_keygen, xsig_keygen,
                        xsig_sign, xsig_verify)
from proxitrace import store
from proxitrace.protocol import set_params


def test_element_text_round_trip(ctx):
    for el in (ctx.g1 ** 7, ctx.g1 ** 0, ctx.g2 ** 9):
        assert store.dec_el(ctx, store.enc_el(ctx, el)) == el
    with pytest.raises((store.StoreError, ValueError)):
        store.dec_el(ctx, "3:deadbeef")
    with pytest.raises((store.StoreError, ValueError)):
        store.dec_el(ctx, store.enc_el(ctx, ctx.g1)[:-4] + "beef")


def test_element_sizes_match_codecs(ctx):
    sizes = store.element_sizes(ctx)
    assert sizes["zn"] == len(ctx.encode_scalar(5))
    assert sizes["g1"] == len(ctx.encode_point(ctx.g1 ** 3))
    assert sizes["g2"] == len(ctx.encode_point(ctx.g2 ** 3))
    assert sizes["gt"] == len(ctx.encode_gt(ctx.gt()))
    assert store.wire_bytes(ctx, {"g1": 6, "g2": 7}) == 13 * sizes["g1"]
    assert store.wire_bytes(ctx, {}) == 0


def test_csig_codecs(ctx):
    rng = ctx.rng(b"store-csig")
    sk, pk = csig_keygen(ctx, 2, Orientation.SIGNS_G2, rng.fork(b"kg"))
    msg = [ctx.g2 ** 3, ctx.g2 ** 5]
    sig = csig_sign(sk, msg, rng.fork(b"sig"))
    pk2 = store.csig_pk_from_dict(ctx, store.csig_pk_to_dict(ctx, pk))
    sk2 = store.csig_sk_from_dict(ctx, store.csig_sk_to_dict(ctx, sk))
    sig2 = store.csig_sig_from_dict(ctx, store.csig_sig_to_dict(ctx, sig))
    assert pk2 == pk and sk2 == sk and sig2 == sig
    from proxitrace import csig_verify
    assert csig_verify(pk2, msg, sig2)


def test_xsig_codecs(ctx):
    rng = ctx.rng(b"store-xsig")
    kp = xsig_keygen(ctx, 2, 1, rng.fork(b"kg"))
    m1, m2 = [ctx.g1 ** 4, ctx.g1 ** 6], [ctx.g2 ** 8]
    sig = xsig_sign(kp, m1, m2, rng.fork(b"sig"))
    kp2 = store.xsig_kp_from_dict(ctx, store.xsig_kp_to_dict(ctx, kp))
    sig2 = store.xsig_sig_from_dict(ctx, store.xsig_sig_to_dict(ctx, sig))
    assert kp2 == kp and sig2 == sig
    assert kp2.public.k1 == 2 and kp2.public.k2 == 1
    assert xsig_verify(kp2.public, m1, m2, sig2)


def test_group_signature_codecs(ctx, proxy_group):
    gm, vk, cred = proxy_group
    rng = ctx.rng(b"store-gsig")
    m = ctx.g2 ** rng.scalar_nonzero()
    _, sig = gsig_sign(vk, cred, m, rng.fork(b"sig"))
    vk2 = store.vk_from_dict(ctx, store.vk_to_dict(ctx, vk))
    gm2 = store.gm_from_dict(ctx, store.gm_to_dict(ctx, gm))
    cred2 = store.credential_from_dict(ctx, store.credential_to_dict(ctx, cred))
    sig2 = store.gsig_from_dict(ctx, store.gsig_to_dict(ctx, sig))
    assert sig2.proof.c == sig.proof.c and sig2.proof.d == sig.proof.d
    assert sig2.proof.pairs == sig.proof.pairs
    assert gsig_verify(vk2, m, sig2)
    # decoded manager and credential still work together
    _, sig3 = gsig_sign(vk2, cred2, m, rng.fork(b"sig3"))
    assert gsig_verify(vk, m, sig3)
    fresh = gsig_join(gm2, ctx, rng.fork(b"join"))
    _, sig4 = gsig_sign(vk, fresh, m, rng.fork(b"sig4"))
    assert gsig_verify(vk2, m, sig4)


def test_tampered_signature_payload_rejected(ctx, proxy_group):
    gm, vk, cred = proxy_group
    rng = ctx.rng(b"store-tamper")
    m = ctx.g2 ** rng.scalar_nonzero()
    _, sig = gsig_sign(vk, cred, m, rng.fork(b"sig"))
    data = store.gsig_to_dict(ctx, sig)
    blob = json.dumps(data)
    corrupt = json.loads(blob.replace(
        data["proof"]["c"]["pk.gr"][-8:], "0" * 8, 1))
    with pytest.raises((store.StoreError, ValueError)):
        store.gsig_from_dict(ctx, corrupt)


def test_protocol_state_codecs(ctx, proxy_group, tmp_path):
    gm, vk, cred = proxy_group
    rng = ctx.rng(b"store-proto")
    cfg = ProtocolConfig()
    ha = ha_keygen(ctx, rng.fork(b"ha"))
    server = s_keygen(ctx, rng.fork(b"s"))
    rec = set_user_id(ha, "erin", rng.fork(b"uid"))
    user = user_keygen(rec, rng.fork(b"key"))
    ccm = set_ccm(ctx, 123456789, 987654321)
    server_ingest(server, ccm, "p1", 0, rng.fork(b"i1"), cfg)
    res = server_ingest(server, ccm, "p2", 1, rng.fork(b"i2"), cfg)
    m_point, _, proof = p_sign(vk, cred, user.id_point, res.ps, rng.fork(b"p"))
    user.contact_list.append(ContactEntry(ccm=ccm, m_point=m_point,
                                          proof=proof, timestamp_s=1,
                                          duration_s=1200))
    rec.status = "infected"
    ha_verify_contact_list(ha, server, vk, "erin", user.contact_list, now_s=2)
    vs = ha_publish(ha)

    ha2 = store.ha_from_dict(ctx, store.ha_to_dict(ctx, ha))
    server2 = store.server_from_dict(ctx, store.server_to_dict(ctx, server))
    user2 = store.user_from_dict(ctx, store.user_to_dict(ctx, user))
    vs2 = store.verified_set_from_dict(ctx, store.verified_set_to_dict(ctx, vs))
    assert ha2.sk == ha.sk and ha2.pk == ha.pk
    assert ha2.db_user["erin"].t_u == rec.t_u
    assert ha2.db_user["erin"].status == "infected"
    assert ha2.accepted_ccms == ha.accepted_ccms
    assert server2.y1 == server.y1 and server2._store.keys() == server._store.keys()
    assert server2._store[ccm].ps_prime == server.fetch_ps_prime_for_ha(ccm, 2, cfg)
    assert user2.contact_list[0].ccm == ccm
    assert sig_verify(vk, user2.contact_list[0].m_point,
                      user2.contact_list[0].proof)
    assert vs2 == vs
    # the restored states still verify a fresh submission end to end
    report = ha_verify_contact_list(ha2, server2, vk, "erin",
                                    user2.contact_list, now_s=2)
    assert report.status == "ok" and len(report.accepted) == 1


def test_roster_and_config_codecs():
    roster = ProxyRoster(primary=("p1", "p2"), secondary=("p3",))
    assert store.roster_from_dict(store.roster_to_dict(roster)) == roster
    cfg = ProtocolConfig(delta_days=10)
    assert store.config_from_dict(store.config_to_dict(cfg)).delta_days == 10


def test_save_and_load_envelope(ctx, tmp_path):
    path = tmp_path / "state.json"
    store.save(str(path), ctx, "params", {"config": store.config_to_dict(ProtocolConfig())})
    ctx2, payload = store.load(str(path), "params")
    assert ctx2 is ctx  # canonical context instance per (level, seed)
    assert payload["config"]["delta_days"] == 14

    with pytest.raises(store.StoreError, match="kind"):
        store.load(str(path), "roster")
    raw = json.loads(path.read_text())
    raw["version"] = 99
    path.write_text(json.dumps(raw))
    with pytest.raises(store.StoreError, match="version"):
        store.load(str(path))
    raw["version"] = store.VERSION
    raw["format"] = "other"
    path.write_text(json.dumps(raw))
    with pytest.raises(store.StoreError, match="not a proxitrace-state"):
        store.load(str(path))


def test_context_identity_survives_level_seed(ctx, tmp_path):
    other = set_params(112, b"another-seed")
    path = tmp_path / "other.json"
    store.save(str(path), other, "roster",
               store.roster_to_dict(ProxyRoster(("a",), ("b",))))
    loaded_ctx, payload = store.load(str(path), "roster")
    assert loaded_ctx is other and loaded_ctx is not ctx
    assert store.roster_from_dict(payload).primary == ("a",)
