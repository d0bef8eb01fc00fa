"""Versioned JSON persistence for keys, credentials, and entity state.

Every file is an envelope `{format, version, kind, security_level, seed,
payload}` with group elements hex-armored through the context codecs.
Group membership is validated on decode, so a tampered file fails to
load rather than producing an off-curve element.
"""

from __future__ import annotations

import json
import os

from .csig import CsigPublicKey, CsigSecretKey, CsigSignature, Orientation
from .gsig import (GroupManagerKey, GroupSignature, GroupVerifKey,
                   ProxyCredential)
from .groups import GroupElement
from .niwi import NiwiCrs, NiwiProof
from .pairing import PairingContext, setup_params
from .protocol import (ContactEntry, HaState, PendingCopy, ProtocolConfig,
                       ProxyRoster, ServerRecord, ServerState, UserRecord,
                       UserState, VerifiedSet)
from .xsig import XsigKeyPair, XsigPublicKey, XsigSignature

FORMAT = "proxitrace-state"
VERSION = 1


class StoreError(Exception):
    """Malformed or inconsistent persisted state."""


# -- element armor ------------------------------------------------------

def enc_el(ctx: PairingContext, el: GroupElement) -> str:
    tag = "1" if el.group is ctx.g1_group else "2"
    return tag + ":" + ctx.encode_point(el).hex()


def dec_el(ctx: PairingContext, text: str) -> GroupElement:
    try:
        tag, body = text.split(":", 1)
        data = bytes.fromhex(body)
    except ValueError as exc:
        raise StoreError(f"bad element encoding: {exc}") from exc
    if tag == "1":
        return ctx.decode_g1(data)
    if tag == "2":
        return ctx.decode_g2(data)
    raise StoreError(f"unknown element tag {tag!r}")


def element_sizes(ctx: PairingContext) -> dict[str, int]:
    """Serialized byte width per element family, from the live codecs."""
    point = 1 + ctx.point_bytes
    return {"zn": ctx.scalar_bytes, "g1": point, "g2": point,
            "gt": 2 * ctx.point_bytes}


def wire_bytes(ctx: PairingContext, counts: dict[str, int]) -> int:
    sizes = element_sizes(ctx)
    return sum(sizes[kind] * num for kind, num in counts.items())


# -- signature-layer codecs --------------------------------------------

def csig_pk_to_dict(ctx, pk: CsigPublicKey) -> dict:
    return {"orientation": pk.orientation.name, "k": pk.k,
            "g_z": enc_el(ctx, pk.g_z), "h_z": enc_el(ctx, pk.h_z),
            "g_r": enc_el(ctx, pk.g_r), "h_u": enc_el(ctx, pk.h_u),
            "a": enc_el(ctx, pk.a), "b": enc_el(ctx, pk.b),
            "g_i": [enc_el(ctx, e) for e in pk.g_i],
            "h_i": [enc_el(ctx, e) for e in pk.h_i]}


def csig_pk_from_dict(ctx, data: dict) -> CsigPublicKey:
    return CsigPublicKey(
        ctx=ctx, orientation=Orientation[data["orientation"]], k=data["k"],
        g_z=dec_el(ctx, data["g_z"]), h_z=dec_el(ctx, data["h_z"]),
        g_r=dec_el(ctx, data["g_r"]), h_u=dec_el(ctx, data["h_u"]),
        a=dec_el(ctx, data["a"]), b=dec_el(ctx, data["b"]),
        g_i=tuple(dec_el(ctx, e) for e in data["g_i"]),
        h_i=tuple(dec_el(ctx, e) for e in data["h_i"]))


def csig_sk_to_dict(ctx, sk: CsigSecretKey) -> dict:
    return {"public": csig_pk_to_dict(ctx, sk.public),
            "alpha": sk.alpha, "beta": sk.beta,
            "gamma_z": sk.gamma_z, "delta_z": sk.delta_z,
            "gammas": list(sk.gammas), "deltas": list(sk.deltas)}


def csig_sk_from_dict(ctx, data: dict) -> CsigSecretKey:
    return CsigSecretKey(
        public=csig_pk_from_dict(ctx, data["public"]),
        alpha=data["alpha"], beta=data["beta"],
        gamma_z=data["gamma_z"], delta_z=data["delta_z"],
        gammas=tuple(data["gammas"]), deltas=tuple(data["deltas"]))


_SIG_FIELDS = ("z", "r", "s", "t", "u", "v", "w")


def csig_sig_to_dict(ctx, sig: CsigSignature) -> dict:
    return {name: enc_el(ctx, getattr(sig, name)) for name in _SIG_FIELDS}


def csig_sig_from_dict(ctx, data: dict) -> CsigSignature:
    return CsigSignature(**{name: dec_el(ctx, data[name]) for name in _SIG_FIELDS})


def xsig_kp_to_dict(ctx, kp: XsigKeyPair) -> dict:
    return {"sk1": csig_sk_to_dict(ctx, kp.sk1), "sk2": csig_sk_to_dict(ctx, kp.sk2)}


def xsig_kp_from_dict(ctx, data: dict) -> XsigKeyPair:
    sk1 = csig_sk_from_dict(ctx, data["sk1"])
    sk2 = csig_sk_from_dict(ctx, data["sk2"])
    pk = XsigPublicKey(k1=sk1.public.k - 1, k2=sk2.public.k,
                       pk1=sk1.public, pk2=sk2.public)
    return XsigKeyPair(sk1=sk1, sk2=sk2, public=pk)


def xsig_sig_to_dict(ctx, sig: XsigSignature) -> dict:
    return {"sig1": csig_sig_to_dict(ctx, sig.sig1),
            "sig2": csig_sig_to_dict(ctx, sig.sig2)}


def xsig_sig_from_dict(ctx, data: dict) -> XsigSignature:
    return XsigSignature(sig1=csig_sig_from_dict(ctx, data["sig1"]),
                         sig2=csig_sig_from_dict(ctx, data["sig2"]))


def niwi_proof_to_dict(ctx, proof: NiwiProof) -> dict:
    return {"c": {k: enc_el(ctx, v) for k, v in proof.c.items()},
            "d": {k: enc_el(ctx, v) for k, v in proof.d.items()},
            "pairs": [[enc_el(ctx, pi), enc_el(ctx, theta)]
                      for pi, theta in proof.pairs]}


def niwi_proof_from_dict(ctx, data: dict) -> NiwiProof:
    return NiwiProof(
        c={k: dec_el(ctx, v) for k, v in data["c"].items()},
        d={k: dec_el(ctx, v) for k, v in data["d"].items()},
        pairs=tuple((dec_el(ctx, pi), dec_el(ctx, theta))
                    for pi, theta in data["pairs"]))


def gsig_to_dict(ctx, sig: GroupSignature) -> dict:
    return {"proof": niwi_proof_to_dict(ctx, sig.proof)}


def gsig_from_dict(ctx, data: dict) -> GroupSignature:
    return GroupSignature(proof=niwi_proof_from_dict(ctx, data["proof"]))


def vk_to_dict(ctx, vk: GroupVerifKey) -> dict:
    return {"pk1": csig_pk_to_dict(ctx, vk.pk1),
            "pk2": csig_pk_to_dict(ctx, vk.pk2),
            "crs": {"u": enc_el(ctx, vk.crs.u), "v": enc_el(ctx, vk.crs.v)}}


def vk_from_dict(ctx, data: dict) -> GroupVerifKey:
    crs = NiwiCrs(ctx=ctx, u=dec_el(ctx, data["crs"]["u"]),
                  v=dec_el(ctx, data["crs"]["v"]))
    return GroupVerifKey(ctx=ctx, pk1=csig_pk_from_dict(ctx, data["pk1"]),
                         pk2=csig_pk_from_dict(ctx, data["pk2"]), crs=crs)


def gm_to_dict(ctx, gm: GroupManagerKey) -> dict:
    return {"xsig_kp": xsig_kp_to_dict(ctx, gm.xsig_kp),
            "vk": vk_to_dict(ctx, gm.public)}


def gm_from_dict(ctx, data: dict) -> GroupManagerKey:
    return GroupManagerKey(xsig_kp=xsig_kp_from_dict(ctx, data["xsig_kp"]),
                           public=vk_from_dict(ctx, data["vk"]))


def credential_to_dict(ctx, cred: ProxyCredential) -> dict:
    return {"sk_p": csig_sk_to_dict(ctx, cred.sk_p),
            "cert": xsig_sig_to_dict(ctx, cred.cert)}


def credential_from_dict(ctx, data: dict) -> ProxyCredential:
    sk_p = csig_sk_from_dict(ctx, data["sk_p"])
    return ProxyCredential(sk_p=sk_p, pk_p=sk_p.public,
                           cert=xsig_sig_from_dict(ctx, data["cert"]))


# -- protocol-layer codecs ----------------------------------------------

def contact_entry_to_dict(ctx, entry: ContactEntry) -> dict:
    return {"ccm": entry.ccm, "m_point": enc_el(ctx, entry.m_point),
            "proof": gsig_to_dict(ctx, entry.proof),
            "timestamp_s": entry.timestamp_s, "duration_s": entry.duration_s}


def contact_entry_from_dict(ctx, data: dict) -> ContactEntry:
    return ContactEntry(ccm=data["ccm"], m_point=dec_el(ctx, data["m_point"]),
                        proof=gsig_from_dict(ctx, data["proof"]),
                        timestamp_s=data["timestamp_s"],
                        duration_s=data["duration_s"])


def ha_to_dict(ctx, ha: HaState) -> dict:
    return {"sk": ha.sk, "pk": enc_el(ctx, ha.pk),
            "db_user": {name: {"t_u": rec.t_u,
                               "id_point": enc_el(ctx, rec.id_point),
                               "pk_u": enc_el(ctx, rec.pk_u) if rec.pk_u else None,
                               "status": rec.status}
                        for name, rec in ha.db_user.items()},
            "accepted_ccms": {name: sorted(ccms)
                              for name, ccms in ha.accepted_ccms.items()},
            "verified_set_log": [verified_set_to_dict(ctx, vs)
                                 for vs in ha.verified_set_log]}


def ha_from_dict(ctx, data: dict) -> HaState:
    db = {}
    for name, rec in data["db_user"].items():
        db[name] = UserRecord(
            name=name, t_u=rec["t_u"], id_point=dec_el(ctx, rec["id_point"]),
            pk_u=dec_el(ctx, rec["pk_u"]) if rec["pk_u"] else None,
            status=rec["status"])
    return HaState(ctx=ctx, sk=data["sk"], pk=dec_el(ctx, data["pk"]),
                   db_user=db,
                   accepted_ccms={name: set(v)
                                  for name, v in data["accepted_ccms"].items()},
                   verified_set_log=[verified_set_from_dict(ctx, vs)
                                     for vs in data["verified_set_log"]])


def server_to_dict(ctx, server: ServerState) -> dict:
    return {"y1": server.y1, "y2": server.y2,
            "pk": [enc_el(ctx, server.pk[0]), enc_el(ctx, server.pk[1])],
            "store": {str(ccm): {"ps": rec.ps, "ps_prime": rec.ps_prime,
                                 "received_at": rec.received_at,
                                 "proxy_pair": list(rec.proxy_pair)}
                      for ccm, rec in server._store.items()},
            "pending": {str(ccm): {"proxy_id": p.proxy_id,
                                   "received_at": p.received_at}
                        for ccm, p in server._pending.items()}}


def server_from_dict(ctx, data: dict) -> ServerState:
    server = ServerState(ctx=ctx, y1=data["y1"], y2=data["y2"],
                         pk=(dec_el(ctx, data["pk"][0]),
                             dec_el(ctx, data["pk"][1])))
    for ccm, rec in data["store"].items():
        server._store[int(ccm)] = ServerRecord(
            ps=rec["ps"], ps_prime=rec["ps_prime"],
            received_at=rec["received_at"],
            proxy_pair=tuple(rec["proxy_pair"]))
    for ccm, p in data["pending"].items():
        server._pending[int(ccm)] = PendingCopy(proxy_id=p["proxy_id"],
                                                received_at=p["received_at"])
    return server


def user_to_dict(ctx, user: UserState) -> dict:
    return {"name": user.name, "id_point": enc_el(ctx, user.id_point),
            "q_u": user.q_u, "pk_u": enc_el(ctx, user.pk_u),
            "contact_list": [contact_entry_to_dict(ctx, e)
                             for e in user.contact_list],
            "current_epoch": user.current_epoch,
            "current_ebid": user.current_ebid}


def user_from_dict(ctx, data: dict) -> UserState:
    return UserState(name=data["name"], id_point=dec_el(ctx, data["id_point"]),
                     q_u=data["q_u"], pk_u=dec_el(ctx, data["pk_u"]),
                     contact_list=[contact_entry_from_dict(ctx, e)
                                   for e in data["contact_list"]],
                     current_epoch=data["current_epoch"],
                     current_ebid=data["current_ebid"])


def verified_set_to_dict(ctx, vs: VerifiedSet) -> dict:
    return {"s_ccm": sorted(vs.s_ccm), "signature": enc_el(ctx, vs.signature)}


def verified_set_from_dict(ctx, data: dict) -> VerifiedSet:
    return VerifiedSet(s_ccm=frozenset(data["s_ccm"]),
                       signature=dec_el(ctx, data["signature"]))


def roster_to_dict(roster: ProxyRoster) -> dict:
    return {"primary": list(roster.primary), "secondary": list(roster.secondary)}


def roster_from_dict(data: dict) -> ProxyRoster:
    return ProxyRoster(primary=tuple(data["primary"]),
                       secondary=tuple(data["secondary"]))


# -- envelopes -----------------------------------------------------------

def envelope(ctx: PairingContext, kind: str, payload: dict) -> dict:
    return {"format": FORMAT, "version": VERSION, "kind": kind,
            "security_level": ctx.security_level, "seed": ctx.seed.hex(),
            "payload": payload}


def save(path: str, ctx: PairingContext, kind: str, payload: dict) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(envelope(ctx, kind, payload), fh, indent=1, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def load(path: str, kind: str | None = None) -> tuple[PairingContext, dict]:
    if not os.path.exists(path):
        raise FileNotFoundError(path)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise StoreError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise StoreError(f"{path}: not a {FORMAT} document")
    if doc.get("version") != VERSION:
        raise StoreError(f"{path}: unsupported version {doc.get('version')!r}")
    if kind is not None and doc.get("kind") != kind:
        raise StoreError(f"{path}: expected kind {kind!r}, found {doc.get('kind')!r}")
    ctx = setup_params(doc["security_level"], bytes.fromhex(doc["seed"]))
    return ctx, doc["payload"]


def config_to_dict(config: ProtocolConfig) -> dict:
    return config.to_dict()


def config_from_dict(data: dict) -> ProtocolConfig:
    return ProtocolConfig.from_dict(data)
