"""Proxy-mediated proximity tracing over the signature and proof cores.

Roles: users exchange ephemeral identifiers over short-range radio and
derive a common contact token per encounter; relay proxies forward the
tokens to a central server, which partially signs matched tokens; the
proxies wrap the server's signature for each user under a group
signature so users cannot tell proxies apart; a health authority later
verifies the contact lists of infected users against its user registry
and the server's records, and publishes the verified token set that
drives everyone's local risk scoring.

All timing uses a simulated integer-seconds clock; days and retention
derive from it.  The server's second partial-signature component stays
server-side: the only reader is the health-authority fetch used during
verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .gsig import (GroupManagerKey, GroupSignature, GroupVerifKey,
                   ProxyCredential, gsig_join, gsig_setup, gsig_sign,
                   gsig_verify)
from .csig import CsigSignature
from .groups import GroupElement
from .pairing import PairingContext, setup_params
from .rng import DeterministicRng

DAY_S = 86400

set_params = setup_params
setup_proxy_group = gsig_setup
join_proxy_group = gsig_join


class ProtocolError(Exception):
    """Domain rule violation distinct from a failed verification verdict."""


@dataclass
class ProtocolConfig:
    delta_days: int = 14            # retention horizon for entries and records
    matching_window_s: int = 60     # second token copy must arrive within this
    duration_unit_s: int = 900      # risk weight unit: one point per started unit
    duration_cap: int = 4
    risk_threshold: int = 1

    def to_dict(self) -> dict:
        return {"delta_days": self.delta_days,
                "matching_window_s": self.matching_window_s,
                "duration_unit_s": self.duration_unit_s,
                "duration_cap": self.duration_cap,
                "risk_threshold": self.risk_threshold}

    @classmethod
    def from_dict(cls, data: dict) -> "ProtocolConfig":
        cfg = cls()
        for key in cfg.to_dict():
            if key in data:
                setattr(cfg, key, data[key])
        return cfg


@dataclass
class UserRecord:
    name: str
    t_u: int                         # authority-held identifier exponent
    id_point: GroupElement           # g2^{t_u}, handed to the user
    pk_u: GroupElement | None = None
    status: str = "healthy"


@dataclass
class HaState:
    ctx: PairingContext
    sk: int
    pk: GroupElement
    db_user: dict[str, UserRecord] = field(default_factory=dict)
    accepted_ccms: dict[str, set[int]] = field(default_factory=dict)
    verified_set_log: list["VerifiedSet"] = field(default_factory=list)

    def record_for(self, user) -> UserRecord:
        if isinstance(user, str):
            rec = self.db_user.get(user)
        else:
            rec = next((r for r in self.db_user.values() if r.id_point == user), None)
        if rec is None:
            raise ProtocolError("unknown user")
        return rec


@dataclass
class ServerRecord:
    ps: int
    ps_prime: int
    received_at: int
    proxy_pair: tuple[str, str]


@dataclass
class PendingCopy:
    proxy_id: str
    received_at: int


@dataclass
class ServerState:
    ctx: PairingContext
    y1: int
    y2: int
    pk: tuple[GroupElement, GroupElement]
    _store: dict[int, ServerRecord] = field(default_factory=dict)
    _pending: dict[int, PendingCopy] = field(default_factory=dict)

    def fetch_ps_prime_for_ha(self, ccm: int, now_s: int,
                              config: ProtocolConfig) -> int | None:
        """Authority-only lookup; the sole reader of the second component."""
        rec = self._store.get(ccm)
        if rec is None or now_s - rec.received_at > config.delta_days * DAY_S:
            return None
        return rec.ps_prime


@dataclass
class UserState:
    name: str
    id_point: GroupElement
    q_u: int
    pk_u: GroupElement
    contact_list: list["ContactEntry"] = field(default_factory=list)
    current_epoch: int | None = None
    current_ebid: int | None = None


@dataclass
class ContactEntry:
    ccm: int
    m_point: GroupElement
    proof: GroupSignature
    timestamp_s: int
    duration_s: int


@dataclass(frozen=True)
class ProxyRoster:
    primary: tuple[str, ...]
    secondary: tuple[str, ...]


@dataclass(frozen=True)
class IngestResult:
    status: str                      # "pending" | "matched" | "rejected"
    ps: int | None = None
    reason: str | None = None


@dataclass(frozen=True)
class VerifiedSet:
    s_ccm: frozenset[int]
    signature: GroupElement


@dataclass(frozen=True)
class VerificationReport:
    status: str                      # "ok" or "refused" (user not infected)
    accepted: tuple[ContactEntry, ...]
    rejected: tuple[tuple[ContactEntry, str], ...]


@dataclass(frozen=True)
class RiskResult:
    score: int
    exposed: bool


# -- key generation ----------------------------------------------------

def ha_keygen(ctx: PairingContext, rng: DeterministicRng) -> HaState:
    x = rng.scalar_nonzero()
    return HaState(ctx=ctx, sk=x, pk=ctx.g2 ** x)


def s_keygen(ctx: PairingContext, rng: DeterministicRng) -> ServerState:
    y1 = rng.scalar_nonzero()
    y2 = rng.scalar_nonzero()
    return ServerState(ctx=ctx, y1=y1, y2=y2, pk=(ctx.g2 ** y1, ctx.g2 ** y2))


def set_user_id(ha: HaState, name: str, rng: DeterministicRng) -> UserRecord:
    if name in ha.db_user:
        raise ProtocolError(f"user {name!r} already registered")
    t_u = rng.scalar_nonzero()
    rec = UserRecord(name=name, t_u=t_u, id_point=ha.ctx.g2 ** t_u)
    ha.db_user[name] = rec
    return rec


def user_keygen(record: UserRecord, rng: DeterministicRng) -> UserState:
    q_u = rng.scalar_nonzero()
    pk_u = record.id_point ** q_u
    record.pk_u = pk_u
    return UserState(name=record.name, id_point=record.id_point, q_u=q_u, pk_u=pk_u)


# -- per-contact flow --------------------------------------------------

def new_ebid(rng: DeterministicRng) -> int:
    while True:
        v = rng.randbits(128)
        if v:
            return v


def set_ccm(ctx: PairingContext, d_a: int, d_b: int) -> int:
    """Common contact token: hash of the product of the two identifiers."""
    if not d_a or not d_b:
        raise ProtocolError("zero ephemeral identifier")
    product = d_a * d_b % ctx.order
    return ctx.hash_to_scalar(ctx.encode_scalar(product), domain=b"ccm")


def choose_proxies(d_a: int, d_b: int, roster: ProxyRoster) -> tuple[str, str]:
    """Deterministic relay assignment; the larger identifier goes primary."""
    if not roster.primary or not roster.secondary:
        raise ProtocolError("roster needs proxies in both subsets")
    if d_a == d_b:
        raise ProtocolError("identifier tie; contact dropped for this epoch")
    if d_a > d_b:
        return roster.primary[0], roster.secondary[0]
    return roster.secondary[0], roster.primary[0]


def s_psign(server: ServerState, ccm: int, rng: DeterministicRng,
            now_s: int = 0, proxy_pair: tuple[str, str] = ("", "")) -> tuple[int, int]:
    """Partial signature pair over a matched token; records the pair.

    Only the first component returns to the relays; the second is held
    for the authority's later consistency check.
    """
    n = server.ctx.order
    r_s = rng.scalar_nonzero()
    ps = (ccm * server.y1 % n * r_s + server.y2) % n
    ps_prime = ccm * r_s % n
    server._store[ccm] = ServerRecord(ps=ps, ps_prime=ps_prime,
                                      received_at=now_s, proxy_pair=proxy_pair)
    return ps, ps_prime


def server_ingest(server: ServerState, ccm: int, proxy_id: str, now_s: int,
                  rng: DeterministicRng,
                  config: ProtocolConfig | None = None) -> IngestResult:
    config = config or ProtocolConfig()
    if not 0 <= ccm < server.ctx.order:
        raise ProtocolError("token out of range")
    rec = server._store.get(ccm)
    if rec is not None:
        if now_s - rec.received_at <= config.delta_days * DAY_S:
            return IngestResult(status="rejected", reason="token already matched")
        del server._store[ccm]
    pend = server._pending.get(ccm)
    if pend is not None and now_s - pend.received_at > config.matching_window_s:
        del server._pending[ccm]
        pend = None
    if pend is None:
        server._pending[ccm] = PendingCopy(proxy_id=proxy_id, received_at=now_s)
        return IngestResult(status="pending")
    if pend.proxy_id == proxy_id:
        return IngestResult(status="rejected", reason="same relay repeated")
    del server._pending[ccm]
    ps, _ = s_psign(server, ccm, rng, now_s=now_s,
                    proxy_pair=(pend.proxy_id, proxy_id))
    return IngestResult(status="matched", ps=ps)


def p_sign(vk: GroupVerifKey, cred: ProxyCredential, id_point: GroupElement,
           ps: int, rng: DeterministicRng, response_map=None
           ) -> tuple[GroupElement, CsigSignature, GroupSignature]:
    """Relay-side wrap: binds the server's partial signature to the user.

    response_map is forwarded to the proof layer for worker-pool
    execution; the output is identical for a given rng state.
    """
    if id_point.group is not vk.ctx.g2_group:
        raise ProtocolError("user identifier must be a second-group element")
    m_point = id_point ** (ps % vk.ctx.order)
    sig_m, proof = gsig_sign(vk, cred, m_point, rng, response_map=response_map)
    return m_point, sig_m, proof


def sig_verify(vk: GroupVerifKey, m_point: GroupElement, proof: GroupSignature,
               precomputed: bool = False) -> bool:
    return gsig_verify(vk, m_point, proof, precomputed=precomputed)


def ccm_verify(m_point: GroupElement, ps_prime: int,
               pk_s: tuple[GroupElement, GroupElement], t_u: int) -> bool:
    """Authority-side consistency: the wrapped point must equal
    Y1^{t_u * ps_prime} * Y2^{t_u}."""
    y1p, y2p = pk_s
    n = int(y1p.group.n)
    return m_point == y1p ** (t_u * ps_prime % n) * y2p ** (t_u % n)


# -- authority-side verification and publication -----------------------

def ha_verify_contact_list(ha: HaState, server: ServerState, vk: GroupVerifKey,
                           user, cl, now_s: int = 0,
                           config: ProtocolConfig | None = None
                           ) -> VerificationReport:
    """Three checks per entry: infection status once, then group
    signature, then server record presence plus token consistency.

    Only accepted token values are retained; the submitted list itself
    is not stored.  Raises for users missing from the registry.
    """
    config = config or ProtocolConfig()
    record = ha.record_for(user)
    if record.status != "infected":
        return VerificationReport(status="refused", accepted=(), rejected=())
    accepted: list[ContactEntry] = []
    rejected: list[tuple[ContactEntry, str]] = []
    for entry in cl:
        if not sig_verify(vk, entry.m_point, entry.proof):
            rejected.append((entry, "invalid group signature"))
            continue
        ps_prime = server.fetch_ps_prime_for_ha(entry.ccm, now_s, config)
        if ps_prime is None:
            rejected.append((entry, "no server record for token"))
            continue
        if not ccm_verify(entry.m_point, ps_prime, server.pk, record.t_u):
            rejected.append((entry, "token inconsistent with server record"))
            continue
        accepted.append(entry)
    ha.accepted_ccms.setdefault(record.name, set()).update(e.ccm for e in accepted)
    return VerificationReport(status="ok", accepted=tuple(accepted),
                              rejected=tuple(rejected))


def canonical_set_encoding(ctx: PairingContext, ccms) -> bytes:
    ccms = sorted(set(int(c) for c in ccms))
    out = [b"verified-set/v1", len(ccms).to_bytes(4, "big")]
    out.extend(ctx.encode_scalar(c) for c in ccms)
    return b"|".join(out)


def ha_publish(ha: HaState) -> VerifiedSet:
    """Signed union of every infected user's accepted tokens."""
    ccms: set[int] = set()
    for name, accepted in ha.accepted_ccms.items():
        rec = ha.db_user.get(name)
        if rec is not None and rec.status == "infected":
            ccms.update(accepted)
    base = ha.ctx.hash_to_g1(canonical_set_encoding(ha.ctx, ccms), domain=b"vset")
    vs = VerifiedSet(s_ccm=frozenset(ccms), signature=base ** ha.sk)
    ha.verified_set_log.append(vs)
    return vs


def verify_published(ctx: PairingContext, vs: VerifiedSet,
                     pk_ha: GroupElement) -> bool:
    base = ctx.hash_to_g1(canonical_set_encoding(ctx, vs.s_ccm), domain=b"vset")
    return ctx.pair_check([(vs.signature, ctx.g2), (base.inv(), pk_ha)])


def duration_weight(duration_s: int, config: ProtocolConfig) -> int:
    if duration_s <= 0:
        return 0
    return min(math.ceil(duration_s / config.duration_unit_s), config.duration_cap)


def risk_score(ctx: PairingContext, user: UserState, vs: VerifiedSet,
               pk_ha: GroupElement,
               config: ProtocolConfig | None = None) -> RiskResult:
    """Duration-weighted count of contacts with published tokens."""
    config = config or ProtocolConfig()
    if not verify_published(ctx, vs, pk_ha):
        raise ProtocolError("published set signature invalid")
    score = sum(duration_weight(e.duration_s, config)
                for e in user.contact_list if e.ccm in vs.s_ccm)
    return RiskResult(score=score, exposed=score >= config.risk_threshold)


def purge_expired(state, now_s: int, config: ProtocolConfig | None = None):
    """Drop entries older than the retention horizon; idempotent."""
    config = config or ProtocolConfig()
    horizon = config.delta_days * DAY_S
    if isinstance(state, UserState):
        state.contact_list = [e for e in state.contact_list
                              if now_s - e.timestamp_s <= horizon]
    elif isinstance(state, ServerState):
        state._store = {ccm: rec for ccm, rec in state._store.items()
                        if now_s - rec.received_at <= horizon}
        state._pending = {ccm: p for ccm, p in state._pending.items()
                          if now_s - p.received_at <= config.matching_window_s}
    else:
        raise TypeError("purge_expired applies to user or server state")
    return state
