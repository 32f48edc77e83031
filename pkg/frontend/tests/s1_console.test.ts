import { describe, expect, it } from "vitest";

import { sseData, StateStream } from "../src/stream.js";
import { HttpTransport, type Transport } from "../src/transport.js";
import type { MapDoc, Snapshot, TeleopCommand, TurnReply } from "../src/types.js";
import { cellOf, cssColor, sceneFrom, worldToNorm } from "../src/scene.js";
import { ConsoleViewModel, dopClass } from "../src/viewmodel.js";
import { loadFixture, RecordingView, startStubServer, waitFor } from "./util.js";

const fixture = loadFixture();

// In-memory transport double. Only the methods a given test drives are wired;
// the rest fail loudly so a test cannot lean on them by accident.
class StubTransport implements Transport {
  utterances: string[] = [];
  failNext = 0;

  constructor(private readonly replies = new Map<string, TurnReply>()) {}

  async utterance(text: string): Promise<TurnReply> {
    this.utterances.push(text);
    if (this.failNext > 0) {
      this.failNext -= 1;
      throw new Error("connection refused");
    }
    const reply = this.replies.get(text);
    if (!reply) throw new Error(`no canned reply for ${JSON.stringify(text)}`);
    return reply;
  }

  state(): Promise<Snapshot> {
    return Promise.reject(new Error("not wired"));
  }
  map(): Promise<MapDoc> {
    return Promise.resolve(fixture.map);
  }
  teleop(_command: TeleopCommand): Promise<void> {
    return Promise.reject(new Error("not wired"));
  }
  reset(): Promise<void> {
    return Promise.reject(new Error("not wired"));
  }
  events(_signal: AbortSignal): Promise<ReadableStream<Uint8Array>> {
    return Promise.reject(new Error("not wired"));
  }
}

function stubReplies(): Map<string, TurnReply> {
  return new Map(fixture.turns.map((t) => [t.text, t.reply]));
}

describe("snapshot rendering", () => {
  it("renders every fixture frame, in order", () => {
    const view = new RecordingView();
    const vm = new ConsoleViewModel(new StubTransport(), view);
    for (const snap of fixture.frames) vm.snapshot(snap);

    expect(view.frames.map((f) => f.seq)).toEqual(fixture.frames.map((f) => f.seq));
    expect(vm.dropped).toBe(0);
    expect(vm.latest).toEqual(fixture.frames[fixture.frames.length - 1]);
  });

  it("drops late and duplicate frames instead of rendering them out of order", () => {
    const view = new RecordingView();
    const vm = new ConsoleViewModel(new StubTransport(), view);
    const frames = fixture.frames;

    const jumbled = [
      ...frames.slice(0, 12),
      frames[5], // duplicate of an already rendered tick
      frames[3], // arrives late
      ...frames.slice(12, 40),
      frames[20], // late again, mid-stream
      ...frames.slice(40),
    ];
    for (const snap of jumbled) vm.snapshot(snap);

    const seqs = view.frames.map((f) => f.seq);
    for (let i = 1; i < seqs.length; i++) expect(seqs[i]).toBeGreaterThan(seqs[i - 1]);
    expect(seqs).toEqual(frames.map((f) => f.seq));
    expect(vm.dropped).toBe(3);
    expect(vm.latest).toEqual(frames[frames.length - 1]);
  });

  it("keeps the gauges equal to the latest snapshot, never an older one", () => {
    const view = new RecordingView();
    const vm = new ConsoleViewModel(new StubTransport(), view);
    for (const snap of fixture.frames) {
      vm.snapshot(snap);
      expect(vm.latest?.behavior).toEqual(snap.behavior);
    }
    const last = fixture.frames[fixture.frames.length - 1];
    const tail = vm.series[vm.series.length - 1];
    expect(tail).toEqual({ t: last.t, s: last.behavior.s, speed: last.behavior.speed });
    expect(cssColor(last.behavior.led_rgb)).toMatch(/^rgb\(\d+, \d+, \d+\)$/);
  });

  it("places the marker where the map says the pose is", () => {
    const last = fixture.frames[fixture.frames.length - 1];
    // the recorded run ends parked at the education department
    const cell = cellOf(fixture.map, last.pose.x, last.pose.y);
    expect(cell).toEqual({
      row: fixture.map.locations.education.row,
      col: fixture.map.locations.education.col,
    });
    const scene = sceneFrom(fixture.map, last);
    const norm = worldToNorm(fixture.map, last.pose.x, last.pose.y);
    expect(scene.marker).toEqual(norm);
    expect(norm.u).toBeGreaterThan(0);
    expect(norm.u).toBeLessThan(1);
    expect(scene.plan.length).toBe(last.plan.length);
  });
});

describe("politeness badges", () => {
  it("matches the service's class for all three anchor phrasings", async () => {
    const view = new RecordingView();
    const vm = new ConsoleViewModel(new StubTransport(stubReplies()), view);

    for (const turn of fixture.turns) await vm.send(turn.text);

    expect(vm.turns.map((t) => t.badge)).toEqual(["polite", "neutral", "impolite"]);
    // the badge is the server's dop_discrete, nothing recomputed client side
    vm.turns.forEach((turn, i) => {
      expect(turn.badge).toBe(dopClass(fixture.turns[i].reply.dop_discrete));
      expect(turn.status).toBe("done");
      expect(turn.response).toBe(fixture.turns[i].reply.response);
    });
  });

  it("folds the reply snapshot into the live view", async () => {
    const view = new RecordingView();
    const vm = new ConsoleViewModel(new StubTransport(stubReplies()), view);
    const polite = fixture.turns[0];

    await vm.send(polite.text);
    expect(vm.latest).toEqual(polite.reply.snapshot);
    expect(view.frames).toHaveLength(1);
  });
});

describe("composer", () => {
  it("refuses whitespace-only sends without touching the network", async () => {
    const transport = new StubTransport(stubReplies());
    const vm = new ConsoleViewModel(transport, new RecordingView());

    expect(vm.canSend("   ")).toBe(false);
    expect(vm.canSend("\n\t")).toBe(false);
    expect(vm.canSend("hello")).toBe(true);

    expect(await vm.send("   ")).toBeNull();
    expect(transport.utterances).toHaveLength(0);
    expect(vm.turns).toHaveLength(0);
  });

  it("keeps the transcript intact on network failure and retries in place", async () => {
    const transport = new StubTransport(stubReplies());
    const vm = new ConsoleViewModel(transport, new RecordingView());

    await vm.send(fixture.turns[0].text); // a good turn first
    transport.failNext = 1;
    await vm.send(fixture.turns[1].text);

    expect(vm.turns).toHaveLength(2);
    expect(vm.turns[0].status).toBe("done");
    expect(vm.turns[1].status).toBe("failed");
    expect(vm.turns[1].error).toContain("connection refused");
    expect(vm.turns[1].text).toBe(fixture.turns[1].text);

    // retry targets exactly the failed turn
    expect(await vm.retry(0)).toBeNull(); // done turns are not retryable
    const reply = await vm.retry(1);
    expect(reply?.dop_discrete).toBe(0);
    expect(vm.turns[1].status).toBe("done");
    expect(vm.turns[1].badge).toBe("neutral");
    expect(vm.turns.map((t) => t.text)).toEqual([
      fixture.turns[0].text,
      fixture.turns[1].text,
    ]);
  });
});

describe("teleop over the wire", () => {
  it("press sends the command, release sends stop", async () => {
    const stub = await startStubServer();
    try {
      const vm = new ConsoleViewModel(new HttpTransport(stub.url), new RecordingView());
      await vm.pressTeleop("forward");
      await vm.releaseTeleop();
      await vm.pressTeleop("left");
      await vm.releaseTeleop();

      expect(stub.requests).toEqual([
        { method: "POST", path: "/api/teleop", body: { command: "forward" } },
        { method: "POST", path: "/api/teleop", body: { command: "stop" } },
        { method: "POST", path: "/api/teleop", body: { command: "left" } },
        { method: "POST", path: "/api/teleop", body: { command: "stop" } },
      ]);
    } finally {
      await stub.close();
    }
  });

  it("reset posts to the documented endpoint and clears the transcript", async () => {
    const stub = await startStubServer({ "/api/reset": { reset: true } });
    try {
      const view = new RecordingView();
      const vm = new ConsoleViewModel(new HttpTransport(stub.url), view);
      vm.turns.push({
        text: "leftover",
        status: "done",
        badge: "neutral",
        da: null,
        response: null,
        error: null,
      });
      const late = fixture.frames[fixture.frames.length - 1];
      vm.acceptFrame(late);
      expect(vm.acceptFrame(fixture.frames[0])).toBe(false); // stale while running

      await vm.reset();
      expect(stub.requests).toEqual([
        { method: "POST", path: "/api/reset", body: {} },
      ]);
      expect(vm.turns).toHaveLength(0);
      // time restarts after a reset, so earlier watermarks must not gate new frames
      expect(vm.acceptFrame(fixture.frames[0])).toBe(true);
    } finally {
      await stub.close();
    }
  });
});

describe("event stream", () => {
  function chunked(text: string, size: number): ReadableStream<Uint8Array> {
    const bytes = new TextEncoder().encode(text);
    return new ReadableStream({
      start(controller) {
        for (let i = 0; i < bytes.length; i += size) {
          controller.enqueue(bytes.slice(i, i + size));
        }
        controller.close();
      },
    });
  }

  it("parses records across arbitrary chunk boundaries", async () => {
    const payloads = ['{"seq": 1}', '{"seq": 2, "pose": {"x": 0.1}}', '{"seq": 3}'];
    const wire = payloads.map((p, i) => `id: ${i + 1}\ndata: ${p}\n\n`).join("");
    for (const size of [1, 3, 7, 1024]) {
      const seen: string[] = [];
      for await (const data of sseData(chunked(wire, size))) seen.push(data);
      expect(seen).toEqual(payloads);
    }
  });

  it("reconnects after a drop and flags the gap as stale", async () => {
    const batches = [fixture.frames.slice(0, 3), fixture.frames.slice(3, 6)];
    let connects = 0;
    const transport = new StubTransport();
    transport.events = async () => {
      const batch = batches[connects];
      connects += 1;
      if (!batch) return new ReadableStream({ start: () => {} }); // idle tail
      const text = batch.map((f) => `id: ${f.seq}\ndata: ${JSON.stringify(f)}\n\n`).join("");
      const bytes = new TextEncoder().encode(text);
      const cut = connects === 1;
      let delivered = false;
      return new ReadableStream({
        pull(controller) {
          if (!delivered) {
            delivered = true;
            controller.enqueue(bytes);
          } else if (cut) {
            controller.error(new Error("wire cut"));
          } else {
            controller.close();
          }
        },
      });
    };

    const view = new RecordingView();
    const vm = new ConsoleViewModel(transport, view);
    const stream = new StateStream(transport, vm, { minDelayMs: 5, maxDelayMs: 10 });
    stream.start();
    await waitFor(() => view.frames.length >= 6 && connects >= 3, 5000, "both batches");
    stream.stop();

    expect(view.frames.map((f) => f.seq)).toEqual(
      fixture.frames.slice(0, 6).map((f) => f.seq),
    );
    // stale on the cut, fresh again once the retry delivers
    expect(view.staleness[0]).toBe(true);
    expect(view.staleness).toContain(false);
    expect(vm.dropped).toBe(0);
  });
});
