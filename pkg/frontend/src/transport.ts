import type { MapDoc, Snapshot, TeleopCommand, TurnReply } from "./types.js";

/** Everything the console knows how to ask the service. Tests swap in stubs;
 * the browser uses HttpTransport against the real thing. */
export interface Transport {
  state(): Promise<Snapshot>;
  map(): Promise<MapDoc>;
  utterance(text: string): Promise<TurnReply>;
  teleop(command: TeleopCommand): Promise<void>;
  reset(): Promise<void>;
  /** Open the event stream and hand back the raw byte stream. The caller owns
   * the AbortSignal that tears it down. */
  events(signal: AbortSignal): Promise<ReadableStream<Uint8Array>>;
}

export class HttpError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "HttpError";
  }
}

async function readError(res: Response): Promise<string> {
  try {
    const doc = await res.json();
    if (doc && typeof doc.error === "string") return doc.error;
  } catch {
    // non-JSON error body, fall through to the status line
  }
  return `${res.status} ${res.statusText}`;
}

export class HttpTransport implements Transport {
  constructor(readonly base: string) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await fetch(this.base + path, init);
    if (!res.ok) throw new HttpError(res.status, await readError(res));
    return (await res.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.json<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  state(): Promise<Snapshot> {
    return this.json<Snapshot>("/api/state");
  }

  map(): Promise<MapDoc> {
    return this.json<MapDoc>("/api/map");
  }

  utterance(text: string): Promise<TurnReply> {
    return this.post<TurnReply>("/api/utterance", { text });
  }

  async teleop(command: TeleopCommand): Promise<void> {
    await this.post("/api/teleop", { command });
  }

  async reset(): Promise<void> {
    await this.post("/api/reset", {});
  }

  async events(signal: AbortSignal): Promise<ReadableStream<Uint8Array>> {
    const res = await fetch(this.base + "/api/events", {
      signal,
      headers: { Accept: "text/event-stream" },
    });
    if (!res.ok) throw new HttpError(res.status, await readError(res));
    if (!res.body) throw new HttpError(res.status, "event stream has no body");
    return res.body;
  }
}
