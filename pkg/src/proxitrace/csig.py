"""Constant-size structure-preserving signatures on group-element vectors.

A key signs length-k vectors of elements from one source group (the
message group); the public key lives mostly in the other (the base
group).  Verification is two pairing-product equations, so signatures
compose with the proof system without ever hashing a message.

The scheme exists in two mirror-image orientations.  SIGNS_G2 puts
messages and the five message-group signature components in G2 with
bases in G1; SIGNS_G1 swaps every role.  One code path serves both, the
orientation only decides pairing argument order.

Randomness draw orders (mirrored by the known-exponent oracle):
keygen: rho_r, rho_u, then gamma_i/delta_i per slot, gamma_z, delta_z,
alpha, beta.  sign: zeta, rho, tau, phi, omega.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .groups import GroupElement
from .pairing import PairingContext
from .rng import DeterministicRng


class Orientation(enum.Enum):
    SIGNS_G2 = "signs-g2"
    SIGNS_G1 = "signs-g1"


@dataclass(frozen=True)
class CsigPublicKey:
    ctx: PairingContext
    orientation: Orientation
    k: int
    g_z: GroupElement
    h_z: GroupElement
    g_r: GroupElement
    h_u: GroupElement
    a: GroupElement          # message-group element carrying alpha
    b: GroupElement          # message-group element carrying beta
    g_i: tuple[GroupElement, ...]
    h_i: tuple[GroupElement, ...]

    @property
    def base_group(self):
        return self.ctx.g1_group if self.orientation is Orientation.SIGNS_G2 else self.ctx.g2_group

    @property
    def message_group(self):
        return self.ctx.g2_group if self.orientation is Orientation.SIGNS_G2 else self.ctx.g1_group

    def oriented(self, base: GroupElement, other: GroupElement):
        """Order a (base-group, message-group) pair as a (G1, G2) pairing."""
        if self.orientation is Orientation.SIGNS_G2:
            return (base, other)
        return (other, base)


@dataclass(frozen=True)
class CsigSecretKey:
    public: CsigPublicKey
    alpha: int
    beta: int
    gamma_z: int
    delta_z: int
    gammas: tuple[int, ...]
    deltas: tuple[int, ...]


@dataclass(frozen=True)
class CsigSignature:
    z: GroupElement
    r: GroupElement
    s: GroupElement          # base-group component, the chaining handle
    t: GroupElement
    u: GroupElement
    v: GroupElement          # base-group component
    w: GroupElement

    def components(self):
        return {"z": self.z, "r": self.r, "s": self.s, "t": self.t,
                "u": self.u, "v": self.v, "w": self.w}


def csig_keygen(ctx: PairingContext, k: int, orientation: Orientation,
                rng: DeterministicRng) -> tuple[CsigSecretKey, CsigPublicKey]:
    if k < 0:
        raise ValueError("message length must be non-negative")
    base_gen = ctx.g1 if orientation is Orientation.SIGNS_G2 else ctx.g2
    msg_gen = ctx.g2 if orientation is Orientation.SIGNS_G2 else ctx.g1
    rho_r = rng.scalar_nonzero()
    rho_u = rng.scalar_nonzero()
    gammas, deltas = [], []
    for _ in range(k):
        gammas.append(rng.scalar())
        deltas.append(rng.scalar())
    gamma_z = rng.scalar()
    delta_z = rng.scalar()
    alpha = rng.scalar()
    beta = rng.scalar()
    g_r = base_gen ** rho_r
    h_u = base_gen ** rho_u
    pk = CsigPublicKey(
        ctx=ctx, orientation=orientation, k=k,
        g_z=g_r ** gamma_z, h_z=h_u ** delta_z, g_r=g_r, h_u=h_u,
        a=msg_gen ** alpha, b=msg_gen ** beta,
        g_i=tuple(g_r ** g for g in gammas),
        h_i=tuple(h_u ** d for d in deltas),
    )
    sk = CsigSecretKey(public=pk, alpha=alpha, beta=beta, gamma_z=gamma_z,
                       delta_z=delta_z, gammas=tuple(gammas), deltas=tuple(deltas))
    return sk, pk


def _check_message(pk: CsigPublicKey, msg) -> tuple[GroupElement, ...]:
    msg = tuple(msg)
    if len(msg) != pk.k:
        raise ValueError(f"expected {pk.k} message elements, got {len(msg)}")
    for m in msg:
        if m.group is not pk.message_group:
            raise ValueError("message element in wrong group")
    return msg


def csig_sign(sk: CsigSecretKey, msg, rng: DeterministicRng) -> CsigSignature:
    pk = sk.public
    msg = _check_message(pk, msg)
    n = pk.ctx.order
    msg_gen = pk.ctx.g2 if pk.orientation is Orientation.SIGNS_G2 else pk.ctx.g1
    zeta = rng.scalar()
    rho = rng.scalar()
    tau = rng.scalar()
    phi = rng.scalar()
    omega = rng.scalar()
    r = msg_gen ** ((sk.alpha - rho * tau - sk.gamma_z * zeta) % n)
    u = msg_gen ** ((sk.beta - phi * omega - sk.delta_z * zeta) % n)
    for m, gamma, delta in zip(msg, sk.gammas, sk.deltas):
        r = r * m ** (-gamma % n)
        u = u * m ** (-delta % n)
    return CsigSignature(
        z=msg_gen ** zeta, r=r, s=pk.g_r ** rho, t=msg_gen ** tau,
        u=u, v=pk.h_u ** phi, w=msg_gen ** omega,
    )


def _check_signature(pk: CsigPublicKey, sig: CsigSignature):
    mg, bg = pk.message_group, pk.base_group
    for name, el in sig.components().items():
        want = bg if name in ("s", "v") else mg
        if el.group is not want:
            raise ValueError(f"signature component {name} in wrong group")


def csig_verify(pk: CsigPublicKey, msg, sig: CsigSignature) -> bool:
    """1 iff both verification equations hold; raises on malformed input."""
    msg = _check_message(pk, msg)
    _check_signature(pk, sig)
    ctx = pk.ctx
    eq1 = [pk.oriented(pk.g_z, sig.z), pk.oriented(pk.g_r, sig.r),
           pk.oriented(sig.s, sig.t), pk.oriented(pk.g_r.inv(), pk.a)]
    eq1.extend(pk.oriented(gi, m) for gi, m in zip(pk.g_i, msg))
    if not ctx.pair_check(eq1):
        return False
    eq2 = [pk.oriented(pk.h_z, sig.z), pk.oriented(pk.h_u, sig.u),
           pk.oriented(sig.v, sig.w), pk.oriented(pk.h_u.inv(), pk.b)]
    eq2.extend(pk.oriented(hi, m) for hi, m in zip(pk.h_i, msg))
    return ctx.pair_check(eq2)
