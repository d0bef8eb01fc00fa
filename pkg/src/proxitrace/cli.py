"""Command-line driver: persistent entities plus the scenario and bench tools.

State lives in a working directory of versioned JSON files, one per
entity, created by `init`/`keygen` and consumed by the later
subcommands.  Exit codes: 0 success, 1 verification failure, 2
malformed input, 3 missing state.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import protocol as proto
from . import store
from .bench import bench as run_bench
from .pairing import setup_params
from .scenario import Scenario, ScenarioError, random_scenario, run_scenario

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_MALFORMED = 2
EXIT_MISSING = 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class StateDir:
    def __init__(self, root: str):
        self.root = root

    def path(self, name: str) -> str:
        return os.path.join(self.root, name)

    def save(self, name: str, ctx, kind: str, payload: dict) -> None:
        os.makedirs(self.root, exist_ok=True)
        store.save(self.path(name), ctx, kind, payload)

    def load(self, name: str, kind: str):
        try:
            return store.load(self.path(name), kind)
        except FileNotFoundError as exc:
            raise CliError(EXIT_MISSING,
                           f"missing state file {self.path(name)}; "
                           f"run the earlier setup subcommands first") from exc

    def config(self) -> tuple:
        ctx, payload = self.load("params.json", "params")
        return ctx, proto.ProtocolConfig.from_dict(payload["config"])


def _user_file(name: str) -> str:
    return f"user-{name}.json"


def _proxy_file(name: str) -> str:
    return f"proxy-{name}.json"


# -- subcommand handlers -------------------------------------------------

def cmd_init(args, sd: StateDir) -> int:
    if args.level not in (112, 128):
        raise CliError(EXIT_MALFORMED, "security level must be 112 or 128")
    ctx = setup_params(args.level, args.seed.encode())
    config = proto.ProtocolConfig(
        delta_days=args.delta_days, matching_window_s=args.matching_window,
        duration_unit_s=args.duration_unit, duration_cap=args.duration_cap,
        risk_threshold=args.risk_threshold)
    sd.save("params.json", ctx, "params", {"config": config.to_dict()})
    sd.save("roster.json", ctx, "roster",
            store.roster_to_dict(proto.ProxyRoster((), ())))
    # reload to prove the file round-trips
    ctx2, _ = sd.load("params.json", "params")
    assert ctx2 is ctx
    print(f"initialised level-{args.level} state in {sd.root}")
    return EXIT_OK


def cmd_keygen(args, sd: StateDir) -> int:
    ctx, _config = sd.config()
    ha = proto.ha_keygen(ctx, ctx.rng(b"cli|ha-keygen"))
    server = proto.s_keygen(ctx, ctx.rng(b"cli|s-keygen"))
    gm, vk = proto.setup_proxy_group(ctx, ctx.rng(b"cli|group-setup"))
    sd.save("ha.json", ctx, "ha", store.ha_to_dict(ctx, ha))
    sd.save("server.json", ctx, "server", store.server_to_dict(ctx, server))
    sd.save("gm.json", ctx, "group-manager", store.gm_to_dict(ctx, gm))
    sd.save("vk.json", ctx, "group-verification-key", store.vk_to_dict(ctx, vk))
    print("generated authority, server, and proxy-group keys")
    return EXIT_OK


def cmd_join_proxy(args, sd: StateDir) -> int:
    ctx, _config = sd.config()
    _, gm_payload = sd.load("gm.json", "group-manager")
    gm = store.gm_from_dict(ctx, gm_payload)
    _, roster_payload = sd.load("roster.json", "roster")
    roster = store.roster_from_dict(roster_payload)
    if args.name in roster.primary or args.name in roster.secondary:
        raise CliError(EXIT_MALFORMED, f"proxy {args.name!r} already joined")
    cred = proto.join_proxy_group(
        gm, ctx, ctx.rng(b"cli|join|" + args.name.encode()))
    sd.save(_proxy_file(args.name), ctx, "proxy-credential",
            store.credential_to_dict(ctx, cred))
    if args.subset == "primary":
        roster = proto.ProxyRoster(roster.primary + (args.name,),
                                   roster.secondary)
    else:
        roster = proto.ProxyRoster(roster.primary,
                                   roster.secondary + (args.name,))
    sd.save("roster.json", ctx, "roster", store.roster_to_dict(roster))
    print(f"proxy {args.name} joined subset {args.subset}")
    return EXIT_OK


def cmd_register_user(args, sd: StateDir) -> int:
    ctx, _config = sd.config()
    _, ha_payload = sd.load("ha.json", "ha")
    ha = store.ha_from_dict(ctx, ha_payload)
    try:
        record = proto.set_user_id(ha, args.name,
                                   ctx.rng(b"cli|uid|" + args.name.encode()))
    except proto.ProtocolError as exc:
        raise CliError(EXIT_MALFORMED, str(exc)) from exc
    user = proto.user_keygen(record, ctx.rng(b"cli|ukey|" + args.name.encode()))
    sd.save("ha.json", ctx, "ha", store.ha_to_dict(ctx, ha))
    sd.save(_user_file(args.name), ctx, "user", store.user_to_dict(ctx, user))
    print(f"registered user {args.name}")
    return EXIT_OK


def cmd_simulate(args, sd: StateDir) -> int:
    if args.scenario == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.scenario, encoding="utf-8") as fh:
                text = fh.read()
        except FileNotFoundError as exc:
            raise CliError(EXIT_MISSING,
                           f"scenario file not found: {args.scenario}") from exc
    try:
        sc = Scenario.from_json(text)
    except ScenarioError as exc:
        raise CliError(EXIT_MALFORMED, str(exc)) from exc
    result = run_scenario(sc)
    ctx = result.ctx
    sd.save("params.json", ctx, "params", {"config": sc.config.to_dict()})
    sd.save("roster.json", ctx, "roster", store.roster_to_dict(sc.roster))
    sd.save("ha.json", ctx, "ha", store.ha_to_dict(ctx, result.ha))
    sd.save("server.json", ctx, "server",
            store.server_to_dict(ctx, result.server))
    sd.save("gm.json", ctx, "group-manager", store.gm_to_dict(ctx, result.gm))
    sd.save("vk.json", ctx, "group-verification-key",
            store.vk_to_dict(ctx, result.vk))
    for name, cred in result.creds.items():
        sd.save(_proxy_file(name), ctx, "proxy-credential",
                store.credential_to_dict(ctx, cred))
    for name, user in result.users.items():
        sd.save(_user_file(name), ctx, "user", store.user_to_dict(ctx, user))
    if result.verified_set is not None:
        sd.save("verified-set.json", ctx, "verified-set",
                store.verified_set_to_dict(ctx, result.verified_set))
    transcript = result.transcript_bytes().decode()
    if args.transcript:
        with open(args.transcript, "w", encoding="utf-8") as fh:
            fh.write(transcript)
    elif not args.quiet:
        print(transcript, end="")
    total = sum(m.size_bytes for m in result.transcript)
    print(f"scenario complete: {len(result.transcript)} messages, "
          f"{total} bytes, {result.dropped_contacts} dropped contacts")
    for name in sorted(result.risk):
        r = result.risk[name]
        print(f"  {name}: score={r.score} exposed={'yes' if r.exposed else 'no'}")
    return EXIT_OK


def cmd_declare_infected(args, sd: StateDir) -> int:
    ctx, _config = sd.config()
    _, ha_payload = sd.load("ha.json", "ha")
    ha = store.ha_from_dict(ctx, ha_payload)
    if args.name not in ha.db_user:
        raise CliError(EXIT_MALFORMED, f"unknown user {args.name!r}")
    ha.db_user[args.name].status = "infected"
    sd.save("ha.json", ctx, "ha", store.ha_to_dict(ctx, ha))
    print(f"user {args.name} marked infected")
    return EXIT_OK


def cmd_verify(args, sd: StateDir) -> int:
    ctx, config = sd.config()
    _, ha_payload = sd.load("ha.json", "ha")
    ha = store.ha_from_dict(ctx, ha_payload)
    _, server_payload = sd.load("server.json", "server")
    server = store.server_from_dict(ctx, server_payload)
    _, vk_payload = sd.load("vk.json", "group-verification-key")
    vk = store.vk_from_dict(ctx, vk_payload)
    _, user_payload = sd.load(_user_file(args.name), "user")
    user = store.user_from_dict(ctx, user_payload)
    now = args.now
    if now is None:
        latest = max((e.timestamp_s for e in user.contact_list), default=0)
        now = latest + proto.DAY_S
    try:
        report = proto.ha_verify_contact_list(ha, server, vk, args.name,
                                              user.contact_list, now, config)
    except proto.ProtocolError as exc:
        raise CliError(EXIT_MALFORMED, str(exc)) from exc
    if report.status != "ok":
        print(f"user {args.name} is not marked infected; nothing verified")
        return EXIT_VERIFY
    sd.save("ha.json", ctx, "ha", store.ha_to_dict(ctx, ha))
    print(f"verified contact list of {args.name}: "
          f"{len(report.accepted)} accepted, {len(report.rejected)} rejected")
    for entry, reason in report.rejected:
        print(f"  rejected token {entry.ccm % 100000:05d}...: {reason}")
    return EXIT_OK


def cmd_publish(args, sd: StateDir) -> int:
    ctx, _config = sd.config()
    _, ha_payload = sd.load("ha.json", "ha")
    ha = store.ha_from_dict(ctx, ha_payload)
    vs = proto.ha_publish(ha)
    sd.save("ha.json", ctx, "ha", store.ha_to_dict(ctx, ha))
    sd.save("verified-set.json", ctx, "verified-set",
            store.verified_set_to_dict(ctx, vs))
    print(f"published verified set with {len(vs.s_ccm)} tokens")
    return EXIT_OK


def cmd_risk(args, sd: StateDir) -> int:
    ctx, config = sd.config()
    _, ha_payload = sd.load("ha.json", "ha")
    ha = store.ha_from_dict(ctx, ha_payload)
    _, vs_payload = sd.load("verified-set.json", "verified-set")
    vs = store.verified_set_from_dict(ctx, vs_payload)
    _, user_payload = sd.load(_user_file(args.name), "user")
    user = store.user_from_dict(ctx, user_payload)
    try:
        result = proto.risk_score(ctx, user, vs, ha.pk, config)
    except proto.ProtocolError as exc:
        raise CliError(EXIT_VERIFY, str(exc)) from exc
    print(f"user {args.name}: score={result.score} "
          f"exposed={'yes' if result.exposed else 'no'}")
    return EXIT_OK


def cmd_bench(args, sd: StateDir) -> int:
    algorithms = None
    if args.algorithms:
        algorithms = tuple(a.strip() for a in args.algorithms.split(",") if a.strip())
    try:
        report = run_bench(
            security_level=args.level, runs=args.runs, algorithms=algorithms,
            multithread=args.multithread, preprocess=args.preprocess,
            workers=args.workers, seed=args.seed)
    except ValueError as exc:
        raise CliError(EXIT_MALFORMED, str(exc)) from exc
    print(report.to_text(), end="")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
            fh.write("\n")
        print(f"json report written to {args.json}")
    if report.equivalence and not all(report.equivalence.values()):
        return EXIT_VERIFY
    return EXIT_OK


def cmd_make_scenario(args, sd: StateDir) -> int:
    sc = random_scenario(user_count=args.users, proxy_count=args.proxies,
                         epoch_count=args.epochs, event_count=args.events,
                         infection_count=args.infections, seed=args.seed,
                         security_level=args.level)
    doc = json.dumps(sc.to_dict(), indent=1, sort_keys=True) + "\n"
    if args.output == "-":
        print(doc, end="")
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(doc)
        print(f"scenario written to {args.output}")
    return EXIT_OK


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxitrace",
        description="Proxy-mediated proximity tracing toolkit")
    parser.add_argument("--state-dir", "-d", default="proxitrace-state",
                        help="working directory for persisted entity state")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", help="create the working directory and parameters")
    p.add_argument("--level", type=int, default=112, choices=(112, 128))
    p.add_argument("--seed", default="proxitrace")
    p.add_argument("--delta-days", type=int, default=14)
    p.add_argument("--matching-window", type=int, default=60,
                   help="seconds within which the second token copy must arrive")
    p.add_argument("--duration-unit", type=int, default=900,
                   help="seconds per risk-weight point")
    p.add_argument("--duration-cap", type=int, default=4)
    p.add_argument("--risk-threshold", type=int, default=1)
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("keygen", help="generate authority, server, and group keys")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("join-proxy", help="enrol a relay proxy in the group")
    p.add_argument("name")
    p.add_argument("--subset", choices=("primary", "secondary"),
                   default="primary")
    p.set_defaults(func=cmd_join_proxy)

    p = sub.add_parser("register-user", help="register a user with the authority")
    p.add_argument("name")
    p.set_defaults(func=cmd_register_user)

    p = sub.add_parser("simulate", help="run a scenario file end to end")
    p.add_argument("scenario", help="scenario JSON path, or - for stdin")
    p.add_argument("--transcript", help="write the transcript to this file")
    p.add_argument("--quiet", action="store_true",
                   help="suppress the transcript on stdout")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("make-scenario", help="emit a generated scenario file")
    p.add_argument("--output", "-o", default="-")
    p.add_argument("--users", type=int, default=10)
    p.add_argument("--proxies", type=int, default=3)
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--events", type=int, default=30)
    p.add_argument("--infections", type=int, default=2)
    p.add_argument("--seed", default="auto")
    p.add_argument("--level", type=int, default=112, choices=(112, 128))
    p.set_defaults(func=cmd_make_scenario)

    p = sub.add_parser("declare-infected", help="mark a user infected")
    p.add_argument("name")
    p.set_defaults(func=cmd_declare_infected)

    p = sub.add_parser("verify", help="verify an infected user's contact list")
    p.add_argument("name")
    p.add_argument("--now", type=int, default=None,
                   help="simulated clock in seconds (default: last contact + 1 day)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("publish", help="publish the signed verified token set")
    p.set_defaults(func=cmd_publish)

    p = sub.add_parser("risk", help="score a user against the published set")
    p.add_argument("name")
    p.set_defaults(func=cmd_risk)

    p = sub.add_parser("bench", help="benchmark the protocol algorithms")
    p.add_argument("--level", type=int, default=112, choices=(112, 128))
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--algorithms", help="comma-separated subset to measure")
    p.add_argument("--multithread", action="store_true")
    p.add_argument("--preprocess", action="store_true")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--seed", default="bench")
    p.add_argument("--json", help="also write the report as JSON to this path")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sd = StateDir(args.state_dir)
    try:
        return args.func(args, sd)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except store.StoreError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except proto.ProtocolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except FileNotFoundError as exc:
        print(f"error: missing state: {exc}", file=sys.stderr)
        return EXIT_MISSING


if __name__ == "__main__":
    sys.exit(main())
