"""Session pipeline: one place where language, behavior, and motion meet.

Each user utterance runs parse -> politeness -> flow -> behavior -> response,
and any motion command lands in the simulated world.  ``tick`` advances the
world one time step at the behavior-controlled speed and feeds arrivals and
failures back through the flow, which is how the FinishedOne offer appears.

The session also accumulates the two artifacts replay writes out: a per-tick
trace of the internal state (the quantities a Fig.-5-style plot needs) and a
decode log with one row per user utterance or motion outcome.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass

from . import behavior, flow
from .config import AppConfig
from .grid import OccupancyGrid, bundled_map, load_map
from .nlu import NluEngine, load_cascade
from .nlu_types import ParseResult
from .politeness import PolitenessModel, PolitenessScore, load_politeness, score
from .responses import ResponseStore, bundled_store, fetch_response, load_store
from .rules import bundled_rules, load_rules
from .sim import Arrived, Blocked, World
from .tokenizer import tokenize

TRACE_COLUMNS = ("t", "S", "speed", "head_pitch", "voice_pitch", "phase", "x", "y", "theta")
DECODE_COLUMNS = (
    "t", "event", "text", "da", "slots", "dop_continuous", "dop_discrete",
    "phase", "motion", "response_key", "response",
)


@dataclass(frozen=True)
class DecodeRecord:
    t: float
    event: str  # "user" or "motion"
    text: str
    result: ParseResult | None
    politeness: PolitenessScore | None
    phase: str
    motion: str
    response_key: tuple[str, int] | None
    response: str

    def row(self) -> tuple[str, ...]:
        slots = ""
        da = ""
        dop_c = ""
        dop_d = ""
        if self.result is not None:
            da = self.result.da.value
            slots = " ".join(f"{s.slot}={s.value}" for s in self.result.slots if s.slot != "no_slot")
        if self.politeness is not None:
            dop_c = f"{self.politeness.continuous:.4f}"
            dop_d = str(self.politeness.discrete)
        key = "" if self.response_key is None else self.response_key[0]
        return (
            f"{self.t:.1f}", self.event, self.text, da, slots, dop_c, dop_d,
            self.phase, self.motion, key, self.response,
        )


class Session:
    def __init__(
        self,
        engine: NluEngine,
        politeness_model: PolitenessModel,
        store: ResponseStore,
        world: World,
        config: AppConfig = AppConfig(),
    ):
        self.engine = engine
        self.politeness_model = politeness_model
        self.store = store
        self.world = world
        self.config = config
        tour = tuple(world.grid.locations)  # declaration order of the map file
        self.flow_state = flow.initial_state(tour)
        self.behavior_state = behavior.initial_state(config.behavior)
        self.rng = random.Random(config.response_seed)
        self.records: list[DecodeRecord] = []
        self.trace: list[tuple[str, ...]] = []
        self.last_response = ""

    # -- pipeline -----------------------------------------------------------

    def handle_utterance(self, text: str) -> DecodeRecord:
        if not text.strip():
            raise ValueError("empty utterance")
        result = self.engine.parse(text)
        dop = score(tokenize(text), self.politeness_model)
        output = flow.step(
            self.flow_state,
            flow.UserUtterance(result=result, politeness=dop, t=self.world.t),
        )
        self.flow_state = output.new_state
        if output.behavior_update is not None:
            self.behavior_state = behavior.update(
                self.behavior_state, output.behavior_update, self.config.behavior
            )
        if output.motion_command is not None:
            self.world.execute(output.motion_command)
        response = ""
        if output.response_key is not None:
            response = fetch_response(self.store, output.response_key, output.bindings, self.rng)
            self.last_response = response
        record = DecodeRecord(
            t=self.world.t,
            event="user",
            text=text,
            result=result,
            politeness=dop,
            phase=str(self.flow_state.phase),
            motion="" if output.motion_command is None else str(output.motion_command),
            response_key=output.response_key,
            response=response,
        )
        self.records.append(record)
        return record

    def tick(self) -> list[DecodeRecord]:
        """One simulation step; returns decode records for motion outcomes."""
        events = self.world.tick(self.behavior_state.speed)
        produced: list[DecodeRecord] = []
        for event in events:
            if isinstance(event, Arrived):
                if event.location is None:
                    continue  # silent: relative moves were acknowledged up front
                flow_event: flow.FlowEvent = flow.MotionComplete(event.location, t=self.world.t)
                label = f"complete:{event.location}"
            else:
                assert isinstance(event, Blocked)
                flow_event = flow.MotionFailed(event.location, event.reason, t=self.world.t)
                label = f"failed:{event.reason}"
            output = flow.step(self.flow_state, flow_event)
            self.flow_state = output.new_state
            if output.motion_command is not None:
                self.world.execute(output.motion_command)
            response = ""
            if output.response_key is not None:
                response = fetch_response(
                    self.store, output.response_key, output.bindings, self.rng
                )
                self.last_response = response
            record = DecodeRecord(
                t=self.world.t,
                event="motion",
                text="",
                result=None,
                politeness=None,
                phase=str(self.flow_state.phase),
                motion=label,
                response_key=output.response_key,
                response=response,
            )
            self.records.append(record)
            produced.append(record)
        self._trace_row()
        return produced

    def run_until_motion_done(self, max_ticks: int = 10_000) -> list[DecodeRecord]:
        """Tick until the world has no active motion (bounded)."""
        produced: list[DecodeRecord] = []
        for _ in range(max_ticks):
            if not self.world.moving:
                break
            produced.extend(self.tick())
        return produced

    def _trace_row(self) -> None:
        b = self.behavior_state
        p = self.world.pose
        self.trace.append((
            f"{self.world.t:.1f}",
            str(b.s),
            f"{b.speed:.6f}",
            f"{b.head_pitch:.6f}",
            f"{b.voice_pitch:.6f}",
            str(self.flow_state.phase),
            f"{p.x:.6f}",
            f"{p.y:.6f}",
            f"{p.theta:.6f}",
        ))

    # -- artifacts ------------------------------------------------------------

    def trace_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        writer.writerows(self.trace)
        return out.getvalue()

    def decode_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(DECODE_COLUMNS)
        writer.writerows(r.row() for r in self.records)
        return out.getvalue()

    def snapshot(self) -> dict:
        b = self.behavior_state
        p = self.world.pose
        return {
            "t": round(self.world.t, 6),
            "pose": {"x": p.x, "y": p.y, "theta": p.theta},
            "behavior": {
                "s": b.s,
                "speed": b.speed,
                "head_pitch": b.head_pitch,
                "voice_pitch": b.voice_pitch,
                "led_rgb": list(b.led_rgb),
            },
            "dialogue": {
                "phase": str(self.flow_state.phase),
                "visited": sorted(self.flow_state.visited),
                "awaiting": self.flow_state.offered_location(),
            },
            "plan": [[x, y] for x, y in self.world.plan_points()],
            "last_response": self.last_response,
        }


def build_session(config: AppConfig = AppConfig(), instant: bool = False) -> Session:
    """Assemble a session from a config, training models in memory if no
    artifact paths are given."""
    from .training import default_models  # lazy: training pulls in corpora

    rules = bundled_rules() if config.rules_path is None else load_rules(config.rules_path)
    store = bundled_store() if config.responses_path is None else load_store(config.responses_path)
    grid = bundled_map() if config.map_path is None else load_map(config.map_path)
    if config.cascade_model_path and config.politeness_model_path:
        cascade = load_cascade(config.cascade_model_path)
        politeness_model = load_politeness(config.politeness_model_path)
    else:
        cascade, politeness_model = default_models()
    engine = NluEngine(rules=rules, model=cascade)
    world = World(grid, config=config.sim, instant=instant)
    return Session(engine, politeness_model, store, world, config=config)
