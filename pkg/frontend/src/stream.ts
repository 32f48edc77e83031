import type { Snapshot } from "./types.js";
import type { Transport } from "./transport.js";

/** Pull server-sent events out of a raw byte stream. Yields the data payload
 * of each record; id lines and comments are skipped. */
export async function* sseData(
  stream: ReadableStream<Uint8Array>,
): AsyncGenerator<string> {
  const reader = stream.getReader();
  const decoder = new TextDecoder();
  let buf = "";
  try {
    for (;;) {
      const { value, done } = await reader.read();
      if (done) break;
      buf += decoder.decode(value, { stream: true }).replace(/\r\n/g, "\n");
      for (;;) {
        const cut = buf.indexOf("\n\n");
        if (cut < 0) break;
        const record = buf.slice(0, cut);
        buf = buf.slice(cut + 2);
        const data = record
          .split("\n")
          .filter((line) => line.startsWith("data:"))
          .map((line) => line.slice(5).trimStart())
          .join("\n");
        if (data) yield data;
      }
    }
  } finally {
    reader.releaseLock();
  }
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export interface StreamSink {
  snapshot(snap: Snapshot): void;
  /** Flips to true when the stream drops and the client is retrying, back to
   * false on the first frame of a fresh connection. */
  stale(isStale: boolean): void;
}

export interface StreamOptions {
  minDelayMs?: number;
  maxDelayMs?: number;
}

/** Keeps a state stream open against the service, reconnecting with capped
 * exponential backoff whenever it drops. */
export class StateStream {
  private abort: AbortController | null = null;
  private stopped = false;
  private staleNow = false;

  constructor(
    private readonly transport: Transport,
    private readonly sink: StreamSink,
    private readonly opts: StreamOptions = {},
  ) {}

  start(): void {
    this.stopped = false;
    void this.run();
  }

  stop(): void {
    this.stopped = true;
    this.abort?.abort();
  }

  private setStale(isStale: boolean): void {
    if (isStale === this.staleNow) return;
    this.staleNow = isStale;
    this.sink.stale(isStale);
  }

  private async run(): Promise<void> {
    const min = this.opts.minDelayMs ?? 250;
    const max = this.opts.maxDelayMs ?? 4000;
    let delay = min;
    while (!this.stopped) {
      this.abort = new AbortController();
      try {
        const body = await this.transport.events(this.abort.signal);
        for await (const data of sseData(body)) {
          if (this.stopped) return;
          delay = min;
          this.setStale(false);
          this.sink.snapshot(JSON.parse(data) as Snapshot);
        }
      } catch {
        // refused, aborted, or dropped mid-record; the retry below covers all three
      }
      if (this.stopped) return;
      this.setStale(true);
      await sleep(delay);
      delay = Math.min(delay * 2, max);
    }
  }
}
