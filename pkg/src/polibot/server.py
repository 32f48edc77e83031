"""HTTP/JSON service around a single session.

Request handlers run on their own threads but never touch the session
directly: every mutation is posted to one session loop and applied serially,
so interleaved requests cannot observe a half-updated state.  Reads are
served from the snapshot the loop published last.

The loop also advances the simulation.  While the world has active motion it
ticks at a configurable interval (real dt by default, zero for tests that
want the sim to run flat out); while idle it blocks on the command queue.
"""

from __future__ import annotations

import json
import queue
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any

from .config import AppConfig
from .grid import LOCATION_GLYPHS, OBSTACLE, OccupancyGrid, SPAWN_GLYPH
from .motion import Teleop
from .session import Session, build_session

TELEOP_COMMANDS = ("forward", "backward", "left", "right", "stop")
REPLY_TIMEOUT = 30.0


@dataclass
class _Utter:
    text: str
    reply: queue.Queue = field(default_factory=lambda: queue.Queue(maxsize=1))


@dataclass
class _Teleop:
    command: str
    reply: queue.Queue = field(default_factory=lambda: queue.Queue(maxsize=1))


@dataclass
class _Reset:
    reply: queue.Queue = field(default_factory=lambda: queue.Queue(maxsize=1))


class _Shutdown:
    pass


def map_document(grid: OccupancyGrid) -> dict:
    """Glyph-level map document a client can draw without knowing numpy."""
    glyph_of = {name: glyph for glyph, name in LOCATION_GLYPHS.items()}
    rows = [
        ["#" if grid.cells[r, c] == OBSTACLE else "." for c in range(grid.width)]
        for r in range(grid.height)
    ]
    for name, (r, c) in grid.locations.items():
        rows[r][c] = glyph_of[name]
    sr, sc = grid.spawn
    rows[sr][sc] = SPAWN_GLYPH
    locations = {}
    for name, (r, c) in grid.locations.items():
        x, y = grid.cell_center((r, c))
        locations[name] = {"row": r, "col": c, "x": x, "y": y}
    sx, sy = grid.cell_center(grid.spawn)
    return {
        "resolution": grid.resolution,
        "width": grid.width,
        "height": grid.height,
        "rows": ["".join(row) for row in rows],
        "locations": locations,
        "spawn": {"row": sr, "col": sc, "x": sx, "y": sy},
    }


class SessionLoop(threading.Thread):
    """Owns the session; applies commands serially and ticks the sim."""

    def __init__(
        self,
        config: AppConfig = AppConfig(),
        *,
        instant: bool = False,
        tick_interval: float | None = None,
    ):
        super().__init__(name="polibot-session", daemon=True)
        self.config = config
        self.instant = instant
        if tick_interval is None:
            # real-time pacing normally; no-sim mode delivers events at once
            tick_interval = 0.0 if instant else config.sim.dt
        self.tick_interval = tick_interval
        self.session: Session = build_session(config, instant=instant)
        self.commands: queue.Queue = queue.Queue()
        self.resetting = threading.Event()
        self._snapshot_lock = threading.Lock()
        self._subscribers: list[queue.Queue] = []
        self._seq = 0
        self._latest: dict = {}
        self._publish()

    # -- snapshot fan-out ---------------------------------------------------

    def _publish(self) -> None:
        snap = self.session.snapshot()
        with self._snapshot_lock:
            self._seq += 1
            snap["seq"] = self._seq
            self._latest = snap
            targets = list(self._subscribers)
        for q in targets:
            q.put(snap)

    def latest_snapshot(self) -> dict:
        with self._snapshot_lock:
            return self._latest

    def subscribe(self) -> queue.Queue:
        q: queue.Queue = queue.Queue()
        with self._snapshot_lock:
            q.put(self._latest)
            self._subscribers.append(q)
        return q

    def unsubscribe(self, q: queue.Queue) -> None:
        with self._snapshot_lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    # -- loop ----------------------------------------------------------------

    def run(self) -> None:
        while True:
            moving = self.session.world.moving
            try:
                cmd = self.commands.get(timeout=self.tick_interval) if moving else self.commands.get()
            except queue.Empty:
                cmd = None
            if isinstance(cmd, _Shutdown):
                return
            if cmd is not None:
                self._apply(cmd)
            elif moving:
                self.session.tick()
                self._publish()

    def _apply(self, cmd: Any) -> None:
        if isinstance(cmd, _Utter):
            try:
                record = self.session.handle_utterance(cmd.text)
            except Exception as exc:  # surfaced as a 500 by the handler
                cmd.reply.put(("error", str(exc)))
                return
            self._publish()
            cmd.reply.put(("ok", _record_document(record, self.latest_snapshot())))
        elif isinstance(cmd, _Teleop):
            # Teleop("stop") rather than Stop(): preempting a dialogue-driven
            # transit must surface as a motion failure to the flow.
            self.session.world.execute(Teleop(direction=cmd.command))
            self._publish()
            cmd.reply.put(("ok", {"accepted": True}))
        elif isinstance(cmd, _Reset):
            self.session = build_session(self.config, instant=self.instant)
            self._publish()
            self.resetting.clear()
            cmd.reply.put(("ok", {"reset": True}))

    def submit(self, cmd: Any) -> tuple[str, Any]:
        self.commands.put(cmd)
        try:
            return cmd.reply.get(timeout=REPLY_TIMEOUT)
        except queue.Empty:
            return ("error", "session loop did not answer in time")

    def stop(self) -> None:
        self.commands.put(_Shutdown())


def _record_document(record, snapshot: dict) -> dict:
    result = record.result
    politeness = record.politeness
    slots = {}
    if result is not None:
        slots = {s.slot: s.value for s in result.slots if s.slot != "no_slot"}
    return {
        "da": result.da.value if result is not None else None,
        "slots": slots,
        "da_confidence": result.da_confidence if result is not None else None,
        "source": result.source.value if result is not None else None,
        "dop_continuous": politeness.continuous if politeness is not None else None,
        "dop_discrete": politeness.discrete if politeness is not None else None,
        "response": record.response,
        "snapshot": snapshot,
    }


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "polibot"

    # quiet by default; tests and the CLI don't want per-request stderr lines
    def log_message(self, format: str, *args) -> None:
        pass

    @property
    def loop(self) -> SessionLoop:
        return self.server.loop  # type: ignore[attr-defined]

    def _send_json(self, status: int, doc: dict) -> None:
        body = json.dumps(doc).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _read_json(self) -> dict | None:
        length = int(self.headers.get("Content-Length", "0") or "0")
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return None
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError:
            return None
        return doc if isinstance(doc, dict) else None

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self) -> None:
        if self.path == "/api/state":
            self._send_json(200, self.loop.latest_snapshot())
        elif self.path == "/api/map":
            self._send_json(200, self.server.map_doc)  # type: ignore[attr-defined]
        elif self.path == "/api/events":
            self._stream_events()
        else:
            self._send_json(404, {"error": f"no such resource: {self.path}"})

    def do_POST(self) -> None:
        if self.path == "/api/utterance":
            self._post_utterance()
        elif self.path == "/api/teleop":
            self._post_teleop()
        elif self.path == "/api/reset":
            self._post_reset()
        else:
            self._send_json(404, {"error": f"no such resource: {self.path}"})

    # -- endpoints ------------------------------------------------------------

    def _post_utterance(self) -> None:
        doc = self._read_json()
        text = (doc or {}).get("text", "")
        if not isinstance(text, str) or not text.strip():
            self._send_json(400, {"error": "utterance text is empty"})
            return
        if self.loop.resetting.is_set():
            self._send_json(409, {"error": "session is resetting"})
            return
        status, payload = self.loop.submit(_Utter(text=text))
        if status == "ok":
            self._send_json(200, payload)
        else:
            self._send_json(500, {"error": payload})

    def _post_teleop(self) -> None:
        doc = self._read_json()
        command = (doc or {}).get("command")
        if command not in TELEOP_COMMANDS:
            self._send_json(400, {"error": f"unknown teleop command: {command!r}"})
            return
        status, payload = self.loop.submit(_Teleop(command=command))
        self._send_json(200 if status == "ok" else 500, payload if status == "ok" else {"error": payload})

    def _post_reset(self) -> None:
        self.loop.resetting.set()
        status, payload = self.loop.submit(_Reset())
        self._send_json(200 if status == "ok" else 500, payload if status == "ok" else {"error": payload})

    def _stream_events(self) -> None:
        q = self.loop.subscribe()
        try:
            self.send_response(200)
            self.send_header("Content-Type", "text/event-stream")
            self.send_header("Cache-Control", "no-cache")
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            while True:
                try:
                    snap = q.get(timeout=15.0)
                except queue.Empty:
                    self.wfile.write(b": keep-alive\n\n")
                    self.wfile.flush()
                    continue
                data = json.dumps(snap)
                self.wfile.write(f"id: {snap['seq']}\ndata: {data}\n\n".encode("utf-8"))
                self.wfile.flush()
        except (BrokenPipeError, ConnectionResetError):
            pass
        finally:
            self.loop.unsubscribe(q)


class PolibotServer:
    """ThreadingHTTPServer plus the session loop behind it.

    Port 0 asks the OS for a free port; read it back from ``port`` after
    construction.
    """

    def __init__(
        self,
        config: AppConfig = AppConfig(),
        *,
        host: str = "127.0.0.1",
        port: int | None = None,
        instant: bool = False,
        tick_interval: float | None = None,
    ):
        self.loop = SessionLoop(config, instant=instant, tick_interval=tick_interval)
        self.httpd = ThreadingHTTPServer((host, config.port if port is None else port), _Handler)
        self.httpd.daemon_threads = True
        self.httpd.loop = self.loop  # type: ignore[attr-defined]
        self.httpd.map_doc = map_document(self.loop.session.world.grid)  # type: ignore[attr-defined]

    @property
    def port(self) -> int:
        return self.httpd.server_address[1]

    def start(self) -> None:
        self.loop.start()
        threading.Thread(target=self.httpd.serve_forever, name="polibot-http", daemon=True).start()

    def serve_forever(self) -> None:
        self.loop.start()
        self.httpd.serve_forever()

    def shutdown(self) -> None:
        self.loop.stop()
        self.httpd.shutdown()
        self.httpd.server_close()
