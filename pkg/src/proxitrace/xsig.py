"""Signatures over mixed vectors of G1 and G2 elements.

Two dual constant-size instances are chained: the G2-side key signs the
G2 part of the message, and the G1-side key signs the G1 part extended
by the s component of that first signature.  The chained s element ties
both halves together, so neither half can be swapped for one from
another message.

Draw order: keygen runs the G1-side keygen (length k1 + 1) then the
G2-side keygen (length k2); sign draws for the G2 side first because
its s feeds the G1-side message.
"""

from __future__ import annotations

from dataclasses import dataclass

from .csig import (CsigPublicKey, CsigSecretKey, CsigSignature, Orientation,
                   csig_keygen, csig_sign, csig_verify)
from .pairing import PairingContext
from .rng import DeterministicRng


@dataclass(frozen=True)
class XsigPublicKey:
    k1: int
    k2: int
    pk1: CsigPublicKey      # signs G1 vectors of length k1 + 1
    pk2: CsigPublicKey      # signs G2 vectors of length k2

    @property
    def ctx(self) -> PairingContext:
        return self.pk1.ctx


@dataclass(frozen=True)
class XsigKeyPair:
    sk1: CsigSecretKey
    sk2: CsigSecretKey
    public: XsigPublicKey


@dataclass(frozen=True)
class XsigSignature:
    sig1: CsigSignature
    sig2: CsigSignature


def xsig_keygen(ctx: PairingContext, k1: int, k2: int,
                rng: DeterministicRng) -> XsigKeyPair:
    if k1 < 0 or k2 < 0 or k1 + k2 < 1:
        raise ValueError("need k1, k2 >= 0 with k1 + k2 >= 1")
    sk1, pk1 = csig_keygen(ctx, k1 + 1, Orientation.SIGNS_G1, rng)
    sk2, pk2 = csig_keygen(ctx, k2, Orientation.SIGNS_G2, rng)
    return XsigKeyPair(sk1=sk1, sk2=sk2,
                       public=XsigPublicKey(k1=k1, k2=k2, pk1=pk1, pk2=pk2))


def xsig_sign(kp: XsigKeyPair, m_g1, m_g2, rng: DeterministicRng) -> XsigSignature:
    m_g1, m_g2 = tuple(m_g1), tuple(m_g2)
    if len(m_g1) != kp.public.k1 or len(m_g2) != kp.public.k2:
        raise ValueError("message length mismatch")
    sig2 = csig_sign(kp.sk2, m_g2, rng)
    sig1 = csig_sign(kp.sk1, m_g1 + (sig2.s,), rng)
    return XsigSignature(sig1=sig1, sig2=sig2)


def xsig_verify(pk: XsigPublicKey, m_g1, m_g2, sig: XsigSignature) -> bool:
    m_g1, m_g2 = tuple(m_g1), tuple(m_g2)
    if len(m_g1) != pk.k1 or len(m_g2) != pk.k2:
        raise ValueError("message length mismatch")
    if not csig_verify(pk.pk1, m_g1 + (sig.sig2.s,), sig.sig1):
        return False
    return csig_verify(pk.pk2, m_g2, sig.sig2)
