"""Deterministic multi-party scenario engine.

A scenario document declares users, a two-subset relay roster, an epoch
grid, proximity events, and infection events.  Running it executes
system initialisation once, the per-contact generation flow for every
proximity event, authority-side verification for every infection event,
then publication and risk scoring for every user.  Every transmission
is recorded in a transcript with group-element counts and byte sizes
derived from the live codecs, so two runs with the same seed produce
byte-identical transcripts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import protocol as proto
from .pairing import PairingContext, setup_params
from .rng import DeterministicRng
from .store import element_sizes, wire_bytes

EBID_BYTES = 16


class ScenarioError(Exception):
    """Invalid scenario document."""


@dataclass(frozen=True)
class ProximityEvent:
    epoch: int
    user_a: str
    user_b: str
    duration_s: int


@dataclass(frozen=True)
class InfectionEvent:
    day: int
    user: str


@dataclass
class Scenario:
    seed: str = "scenario"
    security_level: int = 112
    users: tuple[str, ...] = ()
    roster: proto.ProxyRoster = field(
        default_factory=lambda: proto.ProxyRoster(("p0",), ("p1",)))
    epoch_length_s: int = 900
    epoch_count: int = 1
    proximity_events: tuple[ProximityEvent, ...] = ()
    infection_events: tuple[InfectionEvent, ...] = ()
    config: proto.ProtocolConfig = field(default_factory=proto.ProtocolConfig)

    def validate(self) -> None:
        if not self.users or len(set(self.users)) != len(self.users):
            raise ScenarioError("users must be non-empty and unique")
        roster_ids = set(self.roster.primary) | set(self.roster.secondary)
        if not self.roster.primary or not self.roster.secondary:
            raise ScenarioError("both relay subsets must be non-empty")
        if set(self.roster.primary) & set(self.roster.secondary):
            raise ScenarioError("relay subsets must be disjoint")
        if roster_ids & set(self.users):
            raise ScenarioError("relay and user names must not overlap")
        last_epoch = 0
        for ev in self.proximity_events:
            if ev.user_a not in self.users or ev.user_b not in self.users:
                raise ScenarioError(f"event references undeclared user: {ev}")
            if ev.user_a == ev.user_b:
                raise ScenarioError(f"self-contact: {ev}")
            if not 0 <= ev.epoch < self.epoch_count:
                raise ScenarioError(f"epoch out of range: {ev}")
            if ev.epoch < last_epoch:
                raise ScenarioError("proximity events must be epoch-ordered")
            last_epoch = ev.epoch
            if ev.duration_s <= 0:
                raise ScenarioError(f"non-positive duration: {ev}")
        for inf in self.infection_events:
            if inf.user not in self.users:
                raise ScenarioError(f"infection references undeclared user: {inf}")
            if inf.day < 0:
                raise ScenarioError(f"negative infection day: {inf}")

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "security_level": self.security_level,
            "users": list(self.users),
            "proxies": {"primary": list(self.roster.primary),
                        "secondary": list(self.roster.secondary)},
            "epoch_length_s": self.epoch_length_s,
            "epoch_count": self.epoch_count,
            "proximity_events": [{"epoch": e.epoch, "a": e.user_a,
                                  "b": e.user_b, "duration_s": e.duration_s}
                                 for e in self.proximity_events],
            "infection_events": [{"day": i.day, "user": i.user}
                                 for i in self.infection_events],
            "config": self.config.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        try:
            proxies = data.get("proxies", {})
            sc = cls(
                seed=str(data.get("seed", "scenario")),
                security_level=int(data.get("security_level", 112)),
                users=tuple(data["users"]),
                roster=proto.ProxyRoster(
                    primary=tuple(proxies.get("primary", ())),
                    secondary=tuple(proxies.get("secondary", ()))),
                epoch_length_s=int(data.get("epoch_length_s", 900)),
                epoch_count=int(data.get("epoch_count", 1)),
                proximity_events=tuple(
                    ProximityEvent(epoch=int(e["epoch"]), user_a=e["a"],
                                   user_b=e["b"],
                                   duration_s=int(e["duration_s"]))
                    for e in data.get("proximity_events", ())),
                infection_events=tuple(
                    InfectionEvent(day=int(i["day"]), user=i["user"])
                    for i in data.get("infection_events", ())),
                config=proto.ProtocolConfig.from_dict(data.get("config", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"malformed scenario document: {exc}") from exc
        sc.validate()
        return sc

    @classmethod
    def from_json(cls, text: str) -> "Scenario":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"scenario is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ScenarioError("scenario document must be a JSON object")
        return cls.from_dict(data)


@dataclass(frozen=True)
class TranscriptMessage:
    step: int
    phase: str                      # init | generation | verification | publication | risk
    op: str
    sender: str
    receiver: str
    counts: dict[str, int]
    size_bytes: int
    extra_bytes: int = 0            # non-group payload (identifiers, verdict bits)
    note: str = ""

    def line(self) -> str:
        counts = ",".join(f"{k}={self.counts.get(k, 0)}"
                          for k in ("g1", "g2", "gt", "zn"))
        return (f"{self.step:04d} {self.phase:<12} {self.op:<22} "
                f"{self.sender}->{self.receiver} [{counts}] "
                f"bytes={self.size_bytes} {self.note}").rstrip()


@dataclass
class ScenarioResult:
    scenario: Scenario
    ctx: PairingContext
    transcript: tuple[TranscriptMessage, ...]
    ha: proto.HaState
    server: proto.ServerState
    users: dict[str, proto.UserState]
    gm: object
    vk: object
    creds: dict[str, object]
    verified_set: proto.VerifiedSet | None
    risk: dict[str, proto.RiskResult]
    dropped_contacts: int

    def transcript_lines(self) -> list[str]:
        return [m.line() for m in self.transcript]

    def transcript_bytes(self) -> bytes:
        return ("\n".join(self.transcript_lines()) + "\n").encode()


class _Recorder:
    def __init__(self, ctx: PairingContext):
        self.ctx = ctx
        self.messages: list[TranscriptMessage] = []

    def send(self, phase: str, op: str, sender: str, receiver: str,
             counts: dict[str, int] | None = None, extra_bytes: int = 0,
             note: str = "") -> None:
        counts = dict(counts or {})
        size = wire_bytes(self.ctx, counts) + extra_bytes
        self.messages.append(TranscriptMessage(
            step=len(self.messages), phase=phase, op=op, sender=sender,
            receiver=receiver, counts=counts, size_bytes=size,
            extra_bytes=extra_bytes, note=note))


def _ebid_for(rng: DeterministicRng, user: proto.UserState, epoch: int) -> int:
    if user.current_epoch != epoch:
        user.current_epoch = epoch
        user.current_ebid = proto.new_ebid(
            rng.fork(b"ebid|" + user.name.encode() + b"|%d" % epoch))
    return user.current_ebid


def run_scenario(sc: Scenario) -> ScenarioResult:
    """Execute a scenario deterministically; see the module docstring."""
    sc.validate()
    ctx = setup_params(sc.security_level, sc.seed.encode())
    rng = ctx.rng(b"scenario-run")
    rec = _Recorder(ctx)
    sizes = element_sizes(ctx)

    # ---- system initialisation (once) --------------------------------
    rec.send("init", "set_params", "origin", "all",
             {"g1": 1, "g2": 1, "zn": 2}, note="group description")
    ha = proto.ha_keygen(ctx, rng.fork(b"ha-keygen"))
    rec.send("init", "ha_keygen", "HA", "all", {"g2": 1})
    server = proto.s_keygen(ctx, rng.fork(b"s-keygen"))
    rec.send("init", "s_keygen", "S", "all", {"g2": 2})
    gm, vk = proto.setup_proxy_group(ctx, rng.fork(b"gm-setup"))
    rec.send("init", "setup_proxygr", "GM", "all", {"g1": 11, "g2": 21},
             note="group verification key")

    creds: dict[str, proto.ProxyCredential] = {}
    for proxy in (*sc.roster.primary, *sc.roster.secondary):
        creds[proxy] = proto.join_proxy_group(
            gm, ctx, rng.fork(b"join|" + proxy.encode()))
        rec.send("init", "join_proxygr", proxy, "GM", {"g1": 6, "g2": 2},
                 note="member verification key")
        rec.send("init", "join_proxygr", "GM", proxy, {"g1": 7, "g2": 7},
                 note="membership certificate")

    users: dict[str, proto.UserState] = {}
    for name in sc.users:
        record = proto.set_user_id(ha, name, rng.fork(b"uid|" + name.encode()))
        rec.send("init", "set_userid", "HA", name, {"g2": 1})
        users[name] = proto.user_keygen(record,
                                        rng.fork(b"ukey|" + name.encode()))
        rec.send("init", "user_keygen", name, "HA", {"g2": 1})

    # ---- generation phase (per proximity event) ----------------------
    dropped = 0
    for idx, ev in enumerate(sc.proximity_events):
        now = ev.epoch * sc.epoch_length_s
        ua, ub = users[ev.user_a], users[ev.user_b]
        d_a = _ebid_for(rng, ua, ev.epoch)
        d_b = _ebid_for(rng, ub, ev.epoch)
        rec.send("generation", "ebid_exchange", ev.user_a, ev.user_b,
                 extra_bytes=EBID_BYTES, note=f"epoch {ev.epoch}")
        rec.send("generation", "ebid_exchange", ev.user_b, ev.user_a,
                 extra_bytes=EBID_BYTES, note=f"epoch {ev.epoch}")
        try:
            proxy_a, proxy_b = proto.choose_proxies(d_a, d_b, sc.roster)
        except proto.ProtocolError:
            dropped += 1
            continue
        ccm = proto.set_ccm(ctx, d_a, d_b)

        rec.send("generation", "set_ccm", ev.user_a, proxy_a, {"zn": 1},
                 note="contact token")
        rec.send("generation", "user_id", ev.user_a, proxy_a, {"g2": 1})
        rec.send("generation", "set_ccm", ev.user_b, proxy_b, {"zn": 1},
                 note="contact token")
        rec.send("generation", "user_id", ev.user_b, proxy_b, {"g2": 1})

        r1 = proto.server_ingest(server, ccm, proxy_a, now, rng.fork(
            b"ingest|%d|1" % idx), sc.config)
        rec.send("generation", "forward_ccm", proxy_a, "S", {"zn": 1},
                 note=r1.status)
        r2 = proto.server_ingest(server, ccm, proxy_b, now + 1, rng.fork(
            b"ingest|%d|2" % idx), sc.config)
        rec.send("generation", "forward_ccm", proxy_b, "S", {"zn": 1},
                 note=r2.status)
        if r2.status != "matched":
            dropped += 1
            continue
        ps = r2.ps
        rec.send("generation", "s_psign", "S", proxy_a, {"zn": 1})
        rec.send("generation", "s_psign", "S", proxy_b, {"zn": 1})

        for user, proxy in ((ua, proxy_a), (ub, proxy_b)):
            m_point, _sig_m, proof = proto.p_sign(
                vk, creds[proxy], user.id_point, ps,
                rng.fork(b"psign|%d|" % idx + user.name.encode()))
            rec.send("generation", "p_sign", proxy, user.name,
                     {"g1": 6, "g2": 7},
                     note="wrapped token; commitments 15|G1|+14|G2| ride along")
            ok = proto.sig_verify(vk, m_point, proof)
            rec.send("generation", "sig_verify", user.name, user.name,
                     note=f"verdict={int(ok)}")
            if ok:
                user.contact_list.append(proto.ContactEntry(
                    ccm=ccm, m_point=m_point, proof=proof,
                    timestamp_s=now, duration_s=ev.duration_s))

    # ---- verification phase (per infection event) --------------------
    last_now = 0
    entry_counts = {"g1": 21, "g2": 21, "zn": 1}    # ccm + M + full proof
    for inf in sorted(sc.infection_events, key=lambda i: (i.day, i.user)):
        now = inf.day * proto.DAY_S
        last_now = max(last_now, now)
        ha.db_user[inf.user].status = "infected"
        user = users[inf.user]
        upload = {k: v * len(user.contact_list) for k, v in entry_counts.items()}
        rec.send("verification", "upload_contacts", inf.user, "HA", upload,
                 extra_bytes=16 * len(user.contact_list),
                 note=f"{len(user.contact_list)} entries")
        report = proto.ha_verify_contact_list(
            ha, server, vk, inf.user, user.contact_list, now, sc.config)
        rec.send("verification", "verify_report", "HA", inf.user,
                 extra_bytes=max(1, len(user.contact_list)),
                 note=(f"status={report.status} accepted={len(report.accepted)}"
                       f" rejected={len(report.rejected)}"))

    # ---- publication and risk scoring --------------------------------
    verified_set = None
    risk: dict[str, proto.RiskResult] = {}
    if sc.infection_events:
        verified_set = proto.ha_publish(ha)
        rec.send("publication", "ha_publish", "HA", "all",
                 {"g1": 1, "zn": len(verified_set.s_ccm)},
                 note=f"{len(verified_set.s_ccm)} tokens")
        for name in sc.users:
            result = proto.risk_score(ctx, users[name], verified_set, ha.pk,
                                      sc.config)
            risk[name] = result
            rec.send("risk", "risk_score", name, name,
                     note=f"score={result.score} exposed={int(result.exposed)}")
    else:
        for name in sc.users:
            risk[name] = proto.RiskResult(score=0, exposed=False)

    assert all(m.size_bytes == wire_bytes(ctx, m.counts) + m.extra_bytes
               for m in rec.messages)
    del sizes
    return ScenarioResult(scenario=sc, ctx=ctx,
                          transcript=tuple(rec.messages), ha=ha,
                          server=server, users=users, gm=gm, vk=vk,
                          creds=creds, verified_set=verified_set, risk=risk,
                          dropped_contacts=dropped)


def random_scenario(user_count: int = 10, proxy_count: int = 3,
                    epoch_count: int = 20, event_count: int = 30,
                    infection_count: int = 2, seed: str = "auto",
                    security_level: int = 112) -> Scenario:
    """Deterministic scenario generator for tests and the CLI."""
    if user_count < 2 or proxy_count < 2:
        raise ScenarioError("need at least two users and two relays")
    rng = DeterministicRng(b"scenario-gen|" + seed.encode(), 1 << 128)
    users = tuple(f"u{i:02d}" for i in range(user_count))
    proxies = [f"p{i}" for i in range(proxy_count)]
    half = max(1, proxy_count // 2)
    roster = proto.ProxyRoster(primary=tuple(proxies[:half]),
                               secondary=tuple(proxies[half:]))
    events = []
    epochs = sorted(rng.randbits(32) % epoch_count for _ in range(event_count))
    for epoch in epochs:
        a = users[rng.randbits(32) % user_count]
        b = a
        while b == a:
            b = users[rng.randbits(32) % user_count]
        duration = 300 + rng.randbits(32) % 3300
        events.append(ProximityEvent(epoch=epoch, user_a=a, user_b=b,
                                     duration_s=int(duration)))
    infected = []
    pool = list(users)
    for _ in range(min(infection_count, user_count)):
        pick = pool.pop(rng.randbits(32) % len(pool))
        infected.append(InfectionEvent(day=1, user=pick))
    sc = Scenario(seed=seed, security_level=security_level, users=users,
                  roster=roster, epoch_count=epoch_count,
                  proximity_events=tuple(events),
                  infection_events=tuple(sorted(infected,
                                                key=lambda i: (i.day, i.user))))
    sc.validate()
    return sc
