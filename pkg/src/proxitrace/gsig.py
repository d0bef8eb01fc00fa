"""Proxy group signatures: certified members sign, proofs hide who.

The group manager holds a mixed-group signing key and certifies each
member's one-slot signing key (six first-group and two second-group
elements).  A member signs a message with its own key, then proves in
zero knowledge that (a) the message signature verifies under some key
and (b) that key carries a valid certificate.  The statement is six
pairing-product equations over 29 shared commitments: two for the
message signature and four for the certificate chain.  Verifiers learn
nothing about which member signed.

The four certificate equations and their targets depend only on the
group key, so they are built once and cached, as are the Miller tables
used by the precomputed verification path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .csig import (CsigPublicKey, CsigSecretKey, CsigSignature, Orientation,
                   csig_keygen, csig_sign)
from .groups import GroupElement
from .niwi import (NiwiCrs, NiwiProof, NiwiWitness, PairingProductEquation,
                   crs_gen, niwi_prove, niwi_verify)
from .pairing import PairingContext
from .rng import DeterministicRng
from .xsig import XsigKeyPair, XsigSignature, xsig_keygen, xsig_sign

X_VARS = ("pk.gz", "pk.hz", "pk.gr", "pk.hu", "pk.gg", "pk.hd",
          "s1.z", "s1.r", "s1.t", "s1.u", "s1.w",
          "s2.s", "s2.v", "sm.s", "sm.v")
Y_VARS = ("pk.a", "pk.b", "s1.s", "s1.v",
          "s2.z", "s2.r", "s2.t", "s2.u", "s2.w",
          "sm.z", "sm.r", "sm.t", "sm.u", "sm.w")


@dataclass
class GroupVerifKey:
    ctx: PairingContext
    pk1: CsigPublicKey       # certifies the 7-slot first-group vector
    pk2: CsigPublicKey       # certifies the 2-slot second-group vector
    crs: NiwiCrs
    _cert_equations: tuple = field(default=None, repr=False)
    _tables: dict = field(default=None, repr=False)

    def certificate_equations(self):
        if self._cert_equations is None:
            self._cert_equations = _build_certificate_equations(self)
        return self._cert_equations

    def precomputed_tables(self):
        """Miller tables for every fixed first-group verification input."""
        if self._tables is None:
            ctx = self.ctx
            fixed = [self.crs.u.inv(),
                     self.pk2.g_z, self.pk2.h_z, self.pk2.g_r, self.pk2.h_u,
                     self.pk2.g_i[0], self.pk2.g_i[1],
                     self.pk2.h_i[0], self.pk2.h_i[1]]
            self._tables = {el: ctx.precompute_g1(el) for el in fixed
                            if not el.is_identity}
        return self._tables


@dataclass(frozen=True)
class GroupManagerKey:
    xsig_kp: XsigKeyPair
    public: GroupVerifKey


@dataclass(frozen=True)
class ProxyCredential:
    sk_p: CsigSecretKey
    pk_p: CsigPublicKey
    cert: XsigSignature

    def message_vectors(self):
        pk = self.pk_p
        return ((pk.g_z, pk.h_z, pk.g_r, pk.h_u, pk.g_i[0], pk.h_i[0]),
                (pk.a, pk.b))


@dataclass(frozen=True)
class GroupSignature:
    proof: NiwiProof

    @property
    def pi_m(self):
        """Response pairs of the two message-signature equations."""
        return self.proof.pairs[:2]

    @property
    def pi_p(self):
        """Response pairs of the four certificate equations."""
        return self.proof.pairs[2:]


def gsig_setup(ctx: PairingContext, rng: DeterministicRng) -> tuple[GroupManagerKey, GroupVerifKey]:
    """Group manager key plus the public verification key; draws the
    mixed-group keypair for (6, 2)-vectors, then the reference string."""
    kp = xsig_keygen(ctx, 6, 2, rng)
    crs = crs_gen(ctx, rng)
    vk = GroupVerifKey(ctx=ctx, pk1=kp.public.pk1, pk2=kp.public.pk2, crs=crs)
    return GroupManagerKey(xsig_kp=kp, public=vk), vk


def gsig_join(gm: GroupManagerKey, ctx: PairingContext,
              rng: DeterministicRng) -> ProxyCredential:
    """New member key certified by the manager; draws the member keygen
    first, then the certificate signature."""
    sk_p, pk_p = csig_keygen(ctx, 1, Orientation.SIGNS_G2, rng)
    m_g1 = (pk_p.g_z, pk_p.h_z, pk_p.g_r, pk_p.h_u, pk_p.g_i[0], pk_p.h_i[0])
    m_g2 = (pk_p.a, pk_p.b)
    cert = xsig_sign(gm.xsig_kp, m_g1, m_g2, rng)
    return ProxyCredential(sk_p=sk_p, pk_p=pk_p, cert=cert)


def _zeros(rows: int, cols: int, entries: dict[tuple[int, int], int] = ()):  # noqa: B006
    m = [[0] * cols for _ in range(rows)]
    for (i, j), v in dict(entries or {}).items():
        m[i][j] = v
    return tuple(tuple(row) for row in m)


def _message_equations(vk: GroupVerifKey, m: GroupElement):
    ctx = vk.ctx
    one_g1 = ctx.g1_group.identity()
    one_g2 = ctx.g2_group.identity()
    one_t = ctx.gt_one()
    eq_m1 = PairingProductEquation(
        x_names=("pk.gz", "pk.gr", "sm.s", "pk.gg"),
        y_names=("sm.z", "sm.r", "sm.t", "pk.a"),
        a=(one_g1,) * 4,
        b=(one_g2, one_g2, one_g2, m),
        gamma=_zeros(4, 4, {(0, 0): 1, (1, 1): 1, (1, 3): -1, (2, 2): 1}),
        target=one_t,
    )
    eq_m2 = PairingProductEquation(
        x_names=("pk.hz", "pk.hu", "sm.v", "pk.hd"),
        y_names=("sm.z", "sm.u", "sm.w", "pk.b"),
        a=(one_g1,) * 4,
        b=(one_g2, one_g2, one_g2, m),
        gamma=_zeros(4, 4, {(0, 0): 1, (1, 1): 1, (1, 3): -1, (2, 2): 1}),
        target=one_t,
    )
    return eq_m1, eq_m2


def _build_certificate_equations(vk: GroupVerifKey):
    ctx = vk.ctx
    pk1, pk2 = vk.pk1, vk.pk2
    one_g1 = ctx.g1_group.identity()
    one_g2 = ctx.g2_group.identity()
    # chained first-group vector: the six member-key elements then s2.s
    slots = ("pk.gz", "pk.hz", "pk.gr", "pk.hu", "pk.gg", "pk.hd", "s2.s")
    eq_p1 = PairingProductEquation(
        x_names=("s1.z", "s1.r", "s1.t") + slots,
        y_names=("s1.s",),
        a=(one_g1,),
        b=(pk1.g_z, pk1.g_r, one_g2) + pk1.g_i,
        gamma=_zeros(10, 1, {(2, 0): 1}),
        target=ctx.pair(pk1.a, pk1.g_r),
    )
    eq_p2 = PairingProductEquation(
        x_names=("s1.z", "s1.u", "s1.w") + slots,
        y_names=("s1.v",),
        a=(one_g1,),
        b=(pk1.h_z, pk1.h_u, one_g2) + pk1.h_i,
        gamma=_zeros(10, 1, {(2, 0): 1}),
        target=ctx.pair(pk1.b, pk1.h_u),
    )
    eq_p3 = PairingProductEquation(
        x_names=("s2.s",),
        y_names=("s2.z", "s2.r", "s2.t", "pk.a", "pk.b"),
        a=(pk2.g_z, pk2.g_r, one_g1, pk2.g_i[0], pk2.g_i[1]),
        b=(one_g2,),
        gamma=_zeros(1, 5, {(0, 2): 1}),
        target=ctx.pair(pk2.g_r, pk2.a),
    )
    eq_p4 = PairingProductEquation(
        x_names=("s2.v",),
        y_names=("s2.z", "s2.u", "s2.w", "pk.a", "pk.b"),
        a=(pk2.h_z, pk2.h_u, one_g1, pk2.h_i[0], pk2.h_i[1]),
        b=(one_g2,),
        gamma=_zeros(1, 5, {(0, 2): 1}),
        target=ctx.pair(pk2.h_u, pk2.b),
    )
    return eq_p1, eq_p2, eq_p3, eq_p4


def statement_equations(vk: GroupVerifKey, m: GroupElement):
    return _message_equations(vk, m) + vk.certificate_equations()


def _witness(cred: ProxyCredential, sig_m: CsigSignature) -> NiwiWitness:
    pk = cred.pk_p
    s1, s2 = cred.cert.sig1, cred.cert.sig2
    x = {"pk.gz": pk.g_z, "pk.hz": pk.h_z, "pk.gr": pk.g_r, "pk.hu": pk.h_u,
         "pk.gg": pk.g_i[0], "pk.hd": pk.h_i[0],
         "s1.z": s1.z, "s1.r": s1.r, "s1.t": s1.t, "s1.u": s1.u, "s1.w": s1.w,
         "s2.s": s2.s, "s2.v": s2.v, "sm.s": sig_m.s, "sm.v": sig_m.v}
    y = {"pk.a": pk.a, "pk.b": pk.b, "s1.s": s1.s, "s1.v": s1.v,
         "s2.z": s2.z, "s2.r": s2.r, "s2.t": s2.t, "s2.u": s2.u, "s2.w": s2.w,
         "sm.z": sig_m.z, "sm.r": sig_m.r, "sm.t": sig_m.t, "sm.u": sig_m.u,
         "sm.w": sig_m.w}
    return NiwiWitness(x=x, y=y)


def gsig_sign(vk: GroupVerifKey, cred: ProxyCredential, m: GroupElement,
              rng: DeterministicRng, response_map=None
              ) -> tuple[CsigSignature, GroupSignature]:
    """Member signature on m plus the anonymizing proof; draws the inner
    signature randomness first, then the commitment blinders.

    response_map is forwarded to the proof layer so the six equation
    responses can be computed by worker processes; the output is
    identical either way for a given rng state.
    """
    if m.group is not vk.ctx.g2_group:
        raise ValueError("message must be a second-group element")
    sig_m = csig_sign(cred.sk_p, (m,), rng)
    witness = _witness(cred, sig_m)
    try:
        proof = niwi_prove(vk.crs, statement_equations(vk, m), witness, rng,
                           response_map=response_map)
    except ValueError as exc:
        raise ValueError("credential does not certify this member key") from exc
    return sig_m, GroupSignature(proof=proof)


def gsig_verify(vk: GroupVerifKey, m: GroupElement, sig: GroupSignature,
                precomputed: bool = False) -> bool:
    """1 iff all six statement equations verify; raises on malformed input."""
    if m.group is not vk.ctx.g2_group:
        raise ValueError("message must be a second-group element")
    proof = sig.proof
    if set(proof.c) != set(X_VARS) or set(proof.d) != set(Y_VARS):
        raise ValueError("commitment table does not match the statement shape")
    tables = vk.precomputed_tables() if precomputed else None
    return niwi_verify(vk.crs, statement_equations(vk, m), proof,
                       precomputed=tables)
