"""Record tests/fixture/session.json from a live service.

Talks to the service over HTTP only, exactly like the console does, so the
fixture stays an honest sample of the wire format. Rerun after any change to
the snapshot or reply documents:

    python3 scripts/record_fixture.py
"""

import json
import threading
import time
import urllib.request
from pathlib import Path

from polibot.config import AppConfig
from polibot.server import PolibotServer

ANCHORS = [
    "Could you please show me the education department?",
    "Can you show me the education department?",
    "Show me the education department.",
]

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixture" / "session.json"


def get(base: str, path: str) -> dict:
    with urllib.request.urlopen(base + path) as res:
        return json.load(res)


def post(base: str, path: str, doc: dict) -> dict:
    req = urllib.request.Request(
        base + path,
        data=json.dumps(doc).encode(),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    with urllib.request.urlopen(req) as res:
        return json.load(res)


def tail_events(base: str, frames: list, ready: threading.Event, stop: threading.Event) -> None:
    res = urllib.request.urlopen(base + "/api/events")
    data_lines = []
    for raw in res:
        line = raw.decode().rstrip("\n")
        if line.startswith("data:"):
            data_lines.append(line[5:].lstrip())
        elif not line and data_lines:
            frames.append(json.loads("\n".join(data_lines)))
            data_lines = []
            ready.set()
            if stop.is_set():
                return


def main() -> None:
    server = PolibotServer(AppConfig(), port=0, tick_interval=0.01)
    server.start()
    base = f"http://127.0.0.1:{server.port}"
    frames: list = []
    ready = threading.Event()
    stop = threading.Event()
    tail = threading.Thread(target=tail_events, args=(base, frames, ready, stop), daemon=True)
    tail.start()
    try:
        doc = {"map": get(base, "/api/map"), "turns": [], "frames": frames}
        assert ready.wait(10.0), "no event frames arrived"

        reply = post(base, "/api/utterance", {"text": ANCHORS[0]})
        doc["turns"].append({"text": ANCHORS[0], "reply": reply})
        deadline = time.monotonic() + 30.0
        while time.monotonic() < deadline:
            snap = get(base, "/api/state")
            if snap["dialogue"]["phase"].startswith("AwaitingAcceptance"):
                break
            time.sleep(0.05)
        else:
            raise SystemExit("robot never arrived")

        for text in ANCHORS[1:]:
            reply = post(base, "/api/utterance", {"text": text})
            doc["turns"].append({"text": text, "reply": reply})

        time.sleep(0.2)
        stop.set()
        time.sleep(0.1)
        OUT.write_text(json.dumps(doc, indent=1) + "\n")
        classes = [t["reply"]["dop_discrete"] for t in doc["turns"]]
        print(f"wrote {OUT.name}: {len(frames)} frames, turn classes {classes}")
    finally:
        server.shutdown()


if __name__ == "__main__":
    main()
