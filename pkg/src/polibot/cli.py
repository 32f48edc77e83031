"""Command-line entry points: train, repl, replay, serve."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .cascade import CorpusError, train_cascade
from .config import AppConfig, ConfigFileError, load_config
from .nlu import NluEngine, save_cascade
from .politeness import (
    PolitenessCorpusError,
    load_politeness_corpus,
    save_politeness,
    train_politeness,
)
from .responses import TemplateError
from .rules import RuleFileError, bundled_rules, load_rules
from .session import Session, build_session


class ScriptError(Exception):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Say:
    text: str


@dataclass(frozen=True)
class Wait:
    seconds: float


def parse_script(text: str) -> list[Say | Wait]:
    """Replay script: one utterance per line; `WAIT <seconds>` pauses the
    dialogue while the simulation keeps ticking.  Blank lines and # comments
    are skipped.  WAIT is case-sensitive so the utterance "wait" stays sayable.
    """
    items: list[Say | Wait] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if parts[0] == "WAIT":
            if len(parts) != 2:
                raise ScriptError(line_no, "WAIT takes exactly one duration argument")
            try:
                seconds = float(parts[1])
            except ValueError:
                raise ScriptError(line_no, f"WAIT duration {parts[1]!r} is not a number") from None
            if seconds < 0:
                raise ScriptError(line_no, "WAIT duration must be nonnegative")
            items.append(Wait(seconds))
        else:
            items.append(Say(stripped))
    return items


def run_script(session: Session, items: list[Say | Wait]) -> None:
    """Drive a session through a script.

    Convention: each utterance lets any resulting motion run to completion
    before the next line is spoken, which is how a tour dialogue actually
    paces itself; WAIT adds idle ticks on top.
    """
    dt = session.config.sim.dt
    for item in items:
        if isinstance(item, Say):
            session.handle_utterance(item.text)
            session.run_until_motion_done()
        else:
            for _ in range(round(item.seconds / dt)):
                session.tick()


# ---------------------------------------------------------------------------
# train

ANCHOR_LABEL = "reference utterances"


def cmd_train(args: argparse.Namespace) -> int:
    from .cascade import load_corpus, parse_corpus
    from .training import (
        ANCHOR_DECODES,
        bundled_nlu_corpus,
        bundled_politeness_corpus,
    )

    try:
        nlu_rows = bundled_nlu_corpus() if args.nlu_corpus is None else load_corpus(args.nlu_corpus)
        pol_rows = (
            bundled_politeness_corpus()
            if args.politeness_corpus is None
            else load_politeness_corpus(args.politeness_corpus)
        )
        rules = bundled_rules() if args.rules is None else load_rules(args.rules)
        cascade, report = train_cascade(list(nlu_rows), holdout_fraction=args.holdout)
        politeness, pol_report = train_politeness(list(pol_rows))
    except (CorpusError, PolitenessCorpusError, RuleFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    print(f"cascade: {report.rows} rows, fit accuracy {report.fit_accuracy:.3f}")
    if report.holdout_accuracy is not None:
        print(f"cascade: held-out accuracy {report.holdout_accuracy:.3f}")
    print(f"politeness: {pol_report.rows} rows, fit accuracy {pol_report.fit_accuracy:.3f}")

    engine = NluEngine(rules=rules, model=cascade)
    hits = 0
    for text, da, slot, value in ANCHOR_DECODES:
        r = engine.parse(text)
        got_slot = r.slots[0].slot if r.slots else "no_slot"
        got_value = r.slots[0].value if r.slots else "no_value"
        hits += r.da is da and (got_slot, got_value) == (slot, value)
    total = len(ANCHOR_DECODES)
    print(f"{ANCHOR_LABEL}: {hits}/{total} decoded correctly ({100.0 * hits / total:.1f}%)")

    save_cascade(cascade, args.cascade_out)
    save_politeness(politeness, args.politeness_out)
    print(f"wrote {args.cascade_out} and {args.politeness_out}")
    return 0


# ---------------------------------------------------------------------------
# replay

def cmd_replay(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config)
        script_text = Path(args.script).read_text(encoding="utf-8")
        items = parse_script(script_text)
    except (ConfigFileError, ScriptError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    stem = Path(args.script).stem
    trace_path = Path(args.trace) if args.trace else Path(f"{stem}.trace.csv")
    decode_path = Path(args.decode_log) if args.decode_log else Path(f"{stem}.decode.csv")

    session = build_session(config)
    try:
        run_script(session, items)
    except (ValueError, TemplateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    trace = session.trace_csv()
    decode = session.decode_csv()
    trace_path.write_text(trace, encoding="utf-8")
    decode_path.write_text(decode, encoding="utf-8")
    said = sum(1 for i in items if isinstance(i, Say))
    print(f"replayed {said} utterances over {len(session.trace)} ticks")
    print(f"wrote {trace_path} and {decode_path}")
    if args.bless:
        bless_dir = Path(args.bless)
        bless_dir.mkdir(parents=True, exist_ok=True)
        (bless_dir / f"{stem}.trace.csv").write_text(trace, encoding="utf-8")
        (bless_dir / f"{stem}.decode.csv").write_text(decode, encoding="utf-8")
        print(f"blessed goldens under {bless_dir}")
    return 0


# ---------------------------------------------------------------------------
# repl

def _print_turn(session: Session, record) -> None:
    r = record.result
    slots = " ".join(f"{s.slot}={s.value}" for s in r.slots if s.slot != "no_slot")
    dop = record.politeness
    sign = "+" if dop.discrete > 0 else ""
    print(
        f"  [{r.da.value}{' ' + slots if slots else ''}"
        f" | dop {sign}{dop.discrete} ({dop.continuous:+.2f}) | {r.source.value}]"
    )
    if record.response:
        print(f"robot> {record.response}")


def _drain_motion(session: Session) -> None:
    ticks = 0
    while session.world.moving:
        for rec in session.tick():
            if rec.response:
                print(f"robot> {rec.response}")
        ticks += 1
        if ticks % 10 == 0:
            p = session.world.pose
            left = len(session.world.plan_points())
            print(f"  ... t={session.world.t:.1f}s pose=({p.x:.2f}, {p.y:.2f}) waypoints left: {left}")
        if ticks > 100_000:
            print("  ... giving up on motion", file=sys.stderr)
            break


def cmd_repl(args: argparse.Namespace) -> int:
    try:
        config = load_config(args.config)
    except (ConfigFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print("building session (training bundled models on first use)...")
    session = build_session(config)
    b = session.behavior_state
    print(f"ready. S={b.s} speed={b.speed:.2f} m/s. ctrl-d leaves.")
    while True:
        try:
            line = input("you> ")
        except (EOFError, KeyboardInterrupt):
            print()
            return 0
        if not line.strip():
            continue
        record = session.handle_utterance(line)
        _print_turn(session, record)
        _drain_motion(session)
        b = session.behavior_state
        visited = len(session.flow_state.visited)
        total = len(session.flow_state.tour_list)
        print(
            f"  [phase={session.flow_state.phase} S={b.s} speed={b.speed:.2f}"
            f" visited={visited}/{total}]"
        )


# ---------------------------------------------------------------------------
# serve

def cmd_serve(args: argparse.Namespace) -> int:
    from .server import PolibotServer

    config_path = args.config or os.environ.get("POLIBOT_CONFIG")
    try:
        config = load_config(config_path)
    except (ConfigFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    port = args.port
    if port is None:
        env_port = os.environ.get("POLIBOT_PORT")
        if env_port is not None:
            try:
                port = int(env_port)
            except ValueError:
                print(f"error: POLIBOT_PORT {env_port!r} is not an integer", file=sys.stderr)
                return 2
    try:
        server = PolibotServer(config, host=args.host, port=port, instant=args.no_sim)
    except OSError as exc:
        print(f"error: cannot bind: {exc}", file=sys.stderr)
        return 1
    # flush so wrappers piping stdout see the port before the loop blocks
    print(f"serving on http://{args.host}:{server.port} (ctrl-c stops)", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
    print("bye")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polibot", description="Politeness-adaptive tour robot.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="fit the cascade and politeness models")
    p_train.add_argument("--nlu-corpus", help="dialogue-act corpus TSV (default: bundled)")
    p_train.add_argument("--politeness-corpus", help="politeness corpus TSV (default: bundled)")
    p_train.add_argument("--rules", help="pattern rule file (default: bundled)")
    p_train.add_argument("--holdout", type=float, default=0.0, help="held-out fraction for the report")
    p_train.add_argument("--cascade-out", default="cascade_model.json")
    p_train.add_argument("--politeness-out", default="politeness_model.json")
    p_train.set_defaults(func=cmd_train)

    p_replay = sub.add_parser("replay", help="run a scripted dialogue headless, write trace CSVs")
    p_replay.add_argument("script", help="utterance script, one line each; WAIT <s> pauses")
    p_replay.add_argument("--trace", help="trace CSV path (default: <script>.trace.csv)")
    p_replay.add_argument("--decode-log", help="decode CSV path (default: <script>.decode.csv)")
    p_replay.add_argument("--config", help="config file")
    p_replay.add_argument("--bless", metavar="DIR", help="also write goldens into DIR")
    p_replay.set_defaults(func=cmd_replay)

    p_repl = sub.add_parser("repl", help="interactive dialogue on the terminal")
    p_repl.add_argument("--config", help="config file")
    p_repl.set_defaults(func=cmd_repl)

    p_serve = sub.add_parser("serve", help="HTTP/JSON service for the browser console")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=None, help="default: POLIBOT_PORT or config")
    p_serve.add_argument("--config", help="config file (default: POLIBOT_CONFIG)")
    p_serve.add_argument("--no-sim", action="store_true", help="motion completes instantly")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
