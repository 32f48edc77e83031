import { readFileSync } from "node:fs";
import { createServer, type Server } from "node:http";
import type { AddressInfo } from "node:net";
import { fileURLToPath } from "node:url";

import type { MapDoc, Snapshot, TurnReply } from "../src/types.js";
import type { ConsoleView, TranscriptTurn } from "../src/viewmodel.js";

export interface Fixture {
  map: MapDoc;
  turns: { text: string; reply: TurnReply }[];
  frames: Snapshot[];
}

export function loadFixture(): Fixture {
  const path = fileURLToPath(new URL("./fixture/session.json", import.meta.url));
  return JSON.parse(readFileSync(path, "utf-8")) as Fixture;
}

/** View double that just keeps a log of everything it was told to paint. */
export class RecordingView implements ConsoleView {
  frames: Snapshot[] = [];
  transcripts: TranscriptTurn[][] = [];
  staleness: boolean[] = [];

  frame(snap: Snapshot): void {
    this.frames.push(snap);
  }

  transcript(turns: readonly TranscriptTurn[]): void {
    this.transcripts.push(turns.map((t) => ({ ...t })));
  }

  stale(isStale: boolean): void {
    this.staleness.push(isStale);
  }
}

export async function waitFor(
  check: () => boolean,
  timeoutMs: number,
  label: string,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (check()) return;
    await new Promise((r) => setTimeout(r, 25));
  }
  throw new Error(`timed out waiting for ${label}`);
}

export interface StubRequest {
  method: string;
  path: string;
  body: unknown;
}

export interface StubServer {
  url: string;
  requests: StubRequest[];
  close(): Promise<void>;
}

/** Tiny HTTP double: records every request and answers with canned bodies
 * keyed by path. */
export function startStubServer(
  replies: Record<string, unknown> = {},
): Promise<StubServer> {
  const requests: StubRequest[] = [];
  const server: Server = createServer((req, res) => {
    const chunks: Buffer[] = [];
    req.on("data", (c) => chunks.push(c));
    req.on("end", () => {
      const raw = Buffer.concat(chunks).toString();
      requests.push({
        method: req.method ?? "",
        path: req.url ?? "",
        body: raw ? JSON.parse(raw) : null,
      });
      const doc = replies[req.url ?? ""] ?? { accepted: true };
      res.writeHead(200, { "Content-Type": "application/json" });
      res.end(JSON.stringify(doc));
    });
  });
  return new Promise((resolve) => {
    server.listen(0, "127.0.0.1", () => {
      const { port } = server.address() as AddressInfo;
      resolve({
        url: `http://127.0.0.1:${port}`,
        requests,
        close: () => new Promise((done) => server.close(() => done())),
      });
    });
  });
}
