"""
Driving the robot over HTTP
===========================

The same session loop runs behind a small JSON API, which is what the
browser console talks to.  This script starts a server on a free port,
exercises the endpoints, and tails a few frames of the snapshot stream.
"""

import json
import threading
import urllib.request

from polibot.config import AppConfig
from polibot.server import PolibotServer

server = PolibotServer(AppConfig(), port=0, tick_interval=0.0)
server.start()
base = f"http://127.0.0.1:{server.port}"
print(f"serving on {base}")


def get(path):
    with urllib.request.urlopen(base + path, timeout=10) as resp:
        return json.loads(resp.read())


def post(path, doc):
    req = urllib.request.Request(
        base + path,
        data=json.dumps(doc).encode(),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    with urllib.request.urlopen(req, timeout=10) as resp:
        return json.loads(resp.read())


# The map document drives the console's canvas.
doc = get("/api/map")
print(f"map: {doc['width']}x{doc['height']} cells, locations {list(doc['locations'])}")

# Subscribe to the stream first so we see the transit frames.
frames = []
done = threading.Event()


def tail():
    req = urllib.request.Request(base + "/api/events")
    with urllib.request.urlopen(req, timeout=30) as resp:
        for raw in resp:
            line = raw.decode().strip()
            if not line.startswith("data: "):
                continue
            frames.append(json.loads(line[len("data: "):]))
            if frames[-1]["dialogue"]["visited"]:
                done.set()
                return


reader = threading.Thread(target=tail, daemon=True)
reader.start()

reply = post("/api/utterance", {"text": "could you please show me the education department"})
print(f"decode: {reply['da']} {reply['slots']} dop {reply['dop_discrete']:+d}")
print(f"robot says: {reply['response']}")

done.wait(timeout=30)
print(f"streamed {len(frames)} snapshots while driving")
for snap in frames[:3] + frames[-2:]:
    p = snap["pose"]
    print(f"  t={snap['t']:6.1f}  pose=({p['x']:.2f}, {p['y']:.2f})  phase={snap['dialogue']['phase']}")

final = get("/api/state")
print(f"final phase: {final['dialogue']['phase']}, visited {final['dialogue']['visited']}")

post("/api/reset", {})
server.shutdown()
print("server stopped")
