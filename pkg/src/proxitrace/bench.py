"""Benchmark harness: per-algorithm wall times and wire footprints.

Each selected algorithm runs a configured number of times (default 100)
against pre-built fixtures; the report carries mean and standard
deviation in milliseconds plus the algorithm's transmitted payload in
group-element counts.  Optional variants repeat the two heavy
per-contact operations with a worker pool and with pairing
precomputation; variant rows verify output equivalence against the
baseline as they run.

Wire-count conventions: the relay-to-user wrapped token counts the
point plus the six response pairs (6 first-group, 7 second-group
elements); the proof's commitment table travels alongside and is
reported separately in the row note.  Group enrolment counts both
directions (member key up, certificate down).  Verdict-only algorithms
transmit no group elements.
"""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass, field

from . import protocol as proto
from .pairing import PairingContext, setup_params
from .parallel import ParallelEngine
from .store import wire_bytes

ALGORITHMS = ("set_params", "ha_keygen", "s_keygen", "setup_proxygr",
              "join_proxygr", "set_userid", "user_keygen", "set_ccm",
              "s_psign", "p_sign", "sig_verify", "ccm_verify")

PER_CONTACT = ("set_ccm", "s_psign", "p_sign", "sig_verify", "ccm_verify")

COMM_COUNTS: dict[str, dict[str, int]] = {
    "set_params": {"g1": 1, "g2": 1, "zn": 2},
    "ha_keygen": {"g2": 1},
    "s_keygen": {"g2": 2},
    "setup_proxygr": {"g1": 11, "g2": 21},
    "join_proxygr": {"g1": 13, "g2": 9},
    "set_userid": {"g2": 1},
    "user_keygen": {"g2": 1},
    "set_ccm": {"zn": 1},
    "s_psign": {"zn": 1},
    "p_sign": {"g1": 6, "g2": 7},
    "sig_verify": {},
    "ccm_verify": {},
}

_NOTES = {
    "join_proxygr": "member key 6|G1|+2|G2| up, certificate 7|G1|+7|G2| down",
    "p_sign": "commitments 15|G1|+14|G2| ride along with the proof",
    "sig_verify": "verdict only",
    "ccm_verify": "verdict only",
}


@dataclass
class AlgorithmStats:
    name: str
    variant: str                 # baseline | multithreaded | preprocessed | mt+pre
    runs: int
    mean_ms: float
    std_ms: float
    comm: dict[str, int]
    comm_bytes: int
    note: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "variant": self.variant, "runs": self.runs,
                "mean_ms": self.mean_ms, "std_ms": self.std_ms,
                "comm": self.comm, "comm_bytes": self.comm_bytes,
                "note": self.note}


@dataclass
class BenchReport:
    security_level: int
    runs: int
    workers: int
    multithread: bool
    preprocess: bool
    rows: list[AlgorithmStats] = field(default_factory=list)
    equivalence: dict[str, bool] = field(default_factory=dict)

    def row(self, name: str, variant: str = "baseline") -> AlgorithmStats:
        for row in self.rows:
            if row.name == name and row.variant == variant:
                return row
        raise KeyError((name, variant))

    def to_dict(self) -> dict:
        return {"security_level": self.security_level, "runs": self.runs,
                "workers": self.workers,
                "variants": {"multithread": self.multithread,
                             "preprocess": self.preprocess},
                "rows": [r.to_dict() for r in self.rows],
                "equivalence": self.equivalence}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)

    def to_text(self) -> str:
        header = (f"{'algorithm':<14} {'variant':<13} {'mean ms':>10} "
                  f"{'std ms':>9} {'communication':<22} note")
        lines = [f"security level {self.security_level}, "
                 f"{self.runs} runs per algorithm, {self.workers} worker(s)",
                 header, "-" * len(header)]
        for r in self.rows:
            lines.append(f"{r.name:<14} {r.variant:<13} {r.mean_ms:>10.3f} "
                         f"{r.std_ms:>9.3f} {format_counts(r.comm):<22} {r.note}".rstrip())
        if self.equivalence:
            checks = " ".join(f"{k}={'ok' if v else 'MISMATCH'}"
                              for k, v in sorted(self.equivalence.items()))
            lines.append(f"variant equivalence: {checks}")
        return "\n".join(lines) + "\n"


def format_counts(counts: dict[str, int]) -> str:
    labels = {"g1": "|G1|", "g2": "|G2|", "gt": "|GT|", "zn": "|Zn|"}
    parts = [f"{counts[k]}{labels[k]}" for k in ("g1", "g2", "gt", "zn")
             if counts.get(k)]
    return " + ".join(parts) if parts else "-"


def _time(fn, runs: int) -> tuple[float, float]:
    samples = []
    for _ in range(runs):
        t0 = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - t0) * 1000.0)
    assert len(samples) == runs
    mean = statistics.fmean(samples)
    std = statistics.stdev(samples) if runs > 1 else 0.0
    return mean, std


class _Fixture:
    """Shared inputs prepared once, outside all timed regions."""

    def __init__(self, ctx: PairingContext):
        self.ctx = ctx
        rng = ctx.rng(b"bench-fixture")
        self.ha = proto.ha_keygen(ctx, rng.fork(b"ha"))
        self.server = proto.s_keygen(ctx, rng.fork(b"server"))
        self.gm, self.vk = proto.setup_proxy_group(ctx, rng.fork(b"gm"))
        self.cred = proto.join_proxy_group(self.gm, ctx, rng.fork(b"proxy"))
        self.record = proto.set_user_id(self.ha, "bench-user", rng.fork(b"uid"))
        self.user = proto.user_keygen(self.record, rng.fork(b"ukey"))
        self.d_a = proto.new_ebid(rng.fork(b"ebid-a"))
        self.d_b = proto.new_ebid(rng.fork(b"ebid-b"))
        self.ccm = proto.set_ccm(ctx, self.d_a, self.d_b)
        self.ps, self.ps_prime = proto.s_psign(self.server, self.ccm,
                                               rng.fork(b"psig"))
        self.m_point, _, self.proof = proto.p_sign(
            self.vk, self.cred, self.user.id_point, self.ps, rng.fork(b"wrap"))
        self.rng = rng


def bench(security_level: int = 112, runs: int = 100, algorithms=None,
          multithread: bool = False, preprocess: bool = False,
          workers: int | None = None, seed: str = "bench") -> BenchReport:
    """Measure the selected algorithms and return the report."""
    selected = tuple(algorithms) if algorithms else ALGORITHMS
    unknown = set(selected) - set(ALGORITHMS)
    if unknown:
        raise ValueError(f"unknown algorithms: {sorted(unknown)}")
    if runs < 1:
        raise ValueError("runs must be positive")
    ctx = setup_params(security_level, seed.encode())
    fx = _Fixture(ctx)
    report = BenchReport(security_level=security_level, runs=runs,
                         workers=workers or 1, multithread=multithread,
                         preprocess=preprocess)

    counters = {"i": 0}

    def fresh_rng(label: bytes):
        counters["i"] += 1
        return ctx.rng(label + b"|%d" % counters["i"])

    timed = {
        "set_params": lambda: PairingContext(security_level,
                                             b"bench-%d" % counters["i"]),
        "ha_keygen": lambda: proto.ha_keygen(ctx, fresh_rng(b"hk")),
        "s_keygen": lambda: proto.s_keygen(ctx, fresh_rng(b"sk")),
        "setup_proxygr": lambda: proto.setup_proxy_group(ctx, fresh_rng(b"su")),
        "join_proxygr": lambda: proto.join_proxy_group(fx.gm, ctx,
                                                       fresh_rng(b"jn")),
        "set_userid": lambda: proto.set_user_id(
            fx.ha, f"bench-{counters['i']}", fresh_rng(b"ui")),
        "user_keygen": lambda: proto.user_keygen(fx.record, fresh_rng(b"uk")),
        "set_ccm": lambda: proto.set_ccm(ctx, fx.d_a, fx.d_b),
        "s_psign": lambda: proto.s_psign(fx.server, fx.ccm, fresh_rng(b"ps")),
        "p_sign": lambda: proto.p_sign(fx.vk, fx.cred, fx.user.id_point,
                                       fx.ps, fresh_rng(b"pw")),
        "sig_verify": lambda: proto.sig_verify(fx.vk, fx.m_point, fx.proof),
        "ccm_verify": lambda: proto.ccm_verify(fx.m_point, fx.ps_prime,
                                               fx.server.pk, fx.record.t_u),
    }

    for name in ALGORITHMS:
        if name not in selected:
            continue
        counters["i"] += 1
        mean, std = _time(timed[name], runs)
        report.rows.append(AlgorithmStats(
            name=name, variant="baseline", runs=runs, mean_ms=mean,
            std_ms=std, comm=dict(COMM_COUNTS[name]),
            comm_bytes=wire_bytes(ctx, COMM_COUNTS[name]),
            note=_NOTES.get(name, "")))

    want_sig = "sig_verify" in selected
    want_psign = "p_sign" in selected
    if preprocess and want_sig:
        fx.vk.precomputed_tables()      # built outside the timed region
        mean, std = _time(lambda: proto.sig_verify(fx.vk, fx.m_point, fx.proof,
                                                   precomputed=True), runs)
        report.rows.append(AlgorithmStats(
            name="sig_verify", variant="preprocessed", runs=runs,
            mean_ms=mean, std_ms=std, comm=dict(COMM_COUNTS["sig_verify"]),
            comm_bytes=0, note="pairing tables for fixed arguments"))
        report.equivalence["sig_verify_pre"] = (
            proto.sig_verify(fx.vk, fx.m_point, fx.proof, precomputed=True)
            == proto.sig_verify(fx.vk, fx.m_point, fx.proof))

    if multithread and (want_sig or want_psign):
        with ParallelEngine(fx.vk, max_workers=workers) as eng:
            report.workers = eng.workers
            eng.sig_verify(fx.m_point, fx.proof)        # warm the pool
            if want_psign:
                base = proto.p_sign(fx.vk, fx.cred, fx.user.id_point, fx.ps,
                                    ctx.rng(b"mt-eq"))
                pooled = eng.p_sign(fx.cred, fx.user.id_point, fx.ps,
                                    ctx.rng(b"mt-eq"))
                report.equivalence["p_sign_mt"] = base == pooled
                mean, std = _time(lambda: eng.p_sign(
                    fx.cred, fx.user.id_point, fx.ps, fresh_rng(b"mtp")), runs)
                report.rows.append(AlgorithmStats(
                    name="p_sign", variant="multithreaded", runs=runs,
                    mean_ms=mean, std_ms=std, comm=dict(COMM_COUNTS["p_sign"]),
                    comm_bytes=wire_bytes(ctx, COMM_COUNTS["p_sign"]),
                    note=f"{eng.workers} workers"))
            if want_sig:
                report.equivalence["sig_verify_mt"] = (
                    eng.sig_verify(fx.m_point, fx.proof)
                    == proto.sig_verify(fx.vk, fx.m_point, fx.proof))
                mean, std = _time(lambda: eng.sig_verify(fx.m_point, fx.proof),
                                  runs)
                report.rows.append(AlgorithmStats(
                    name="sig_verify", variant="multithreaded", runs=runs,
                    mean_ms=mean, std_ms=std, comm={}, comm_bytes=0,
                    note=f"{eng.workers} workers"))
                if preprocess:
                    report.equivalence["sig_verify_mt_pre"] = (
                        eng.sig_verify(fx.m_point, fx.proof, precomputed=True)
                        == proto.sig_verify(fx.vk, fx.m_point, fx.proof))
                    mean, std = _time(lambda: eng.sig_verify(
                        fx.m_point, fx.proof, precomputed=True), runs)
                    report.rows.append(AlgorithmStats(
                        name="sig_verify", variant="mt+pre", runs=runs,
                        mean_ms=mean, std_ms=std, comm={}, comm_bytes=0,
                        note=f"{eng.workers} workers, tables"))
    return report
