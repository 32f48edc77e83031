import type { Snapshot, TeleopCommand, TurnReply } from "./types.js";
import type { Transport } from "./transport.js";
import type { StreamSink } from "./stream.js";

export type DopClass = "polite" | "neutral" | "impolite" | "unknown";

/** Badge class for a turn. The argument is the service's dop_discrete field;
 * the console never scores text itself. */
export function dopClass(discrete: number | null): DopClass {
  if (discrete === 1) return "polite";
  if (discrete === 0) return "neutral";
  if (discrete === -1) return "impolite";
  return "unknown";
}

export interface TranscriptTurn {
  text: string;
  status: "pending" | "done" | "failed";
  badge: DopClass | null;
  da: string | null;
  response: string | null;
  error: string | null;
}

export interface ConsoleView {
  /** One call per accepted frame, in snapshot order. */
  frame(snap: Snapshot): void;
  transcript(turns: readonly TranscriptTurn[]): void;
  stale(isStale: boolean): void;
}

export interface SeriesPoint {
  t: number;
  s: number;
  speed: number;
}

const SERIES_WINDOW = 600;

export class ConsoleViewModel implements StreamSink {
  latest: Snapshot | null = null;
  readonly turns: TranscriptTurn[] = [];
  readonly series: SeriesPoint[] = [];
  dropped = 0;

  private lastSeq = -Infinity;
  private lastT = -Infinity;

  constructor(
    private readonly transport: Transport,
    private readonly view: ConsoleView,
    private readonly seriesWindow: number = SERIES_WINDOW,
  ) {}

  // -- state stream ---------------------------------------------------------

  snapshot(snap: Snapshot): void {
    this.acceptFrame(snap);
  }

  stale(isStale: boolean): void {
    this.view.stale(isStale);
  }

  /** Apply one frame if it advances the session. Frames that arrive late or
   * repeat an already rendered tick are dropped, never reordered. */
  acceptFrame(snap: Snapshot): boolean {
    if (snap.seq <= this.lastSeq || snap.t < this.lastT) {
      this.dropped += 1;
      return false;
    }
    this.lastSeq = snap.seq;
    this.lastT = snap.t;
    this.latest = snap;
    this.series.push({ t: snap.t, s: snap.behavior.s, speed: snap.behavior.speed });
    if (this.series.length > this.seriesWindow) {
      this.series.splice(0, this.series.length - this.seriesWindow);
    }
    this.view.frame(snap);
    return true;
  }

  // -- chat -------------------------------------------------------------------

  canSend(text: string): boolean {
    return text.trim().length > 0;
  }

  /** Send one utterance. Returns null without touching the network when the
   * text is whitespace only. */
  async send(text: string): Promise<TurnReply | null> {
    if (!this.canSend(text)) return null;
    const turn: TranscriptTurn = {
      text,
      status: "pending",
      badge: null,
      da: null,
      response: null,
      error: null,
    };
    this.turns.push(turn);
    this.view.transcript(this.turns);
    return this.perform(turn);
  }

  /** Re-send a failed turn in place; earlier and later turns are untouched. */
  async retry(index: number): Promise<TurnReply | null> {
    const turn = this.turns[index];
    if (!turn || turn.status !== "failed") return null;
    turn.status = "pending";
    turn.error = null;
    this.view.transcript(this.turns);
    return this.perform(turn);
  }

  private async perform(turn: TranscriptTurn): Promise<TurnReply | null> {
    try {
      const reply = await this.transport.utterance(turn.text);
      turn.status = "done";
      turn.badge = dopClass(reply.dop_discrete);
      turn.da = reply.da;
      turn.response = reply.response;
      this.view.transcript(this.turns);
      // the reply carries the post-turn snapshot; fold it in so the gauges
      // move with the turn instead of waiting on the next stream tick
      this.acceptFrame(reply.snapshot);
      return reply;
    } catch (err) {
      turn.status = "failed";
      turn.error = err instanceof Error ? err.message : String(err);
      this.view.transcript(this.turns);
      return null;
    }
  }

  // -- teleop and reset -------------------------------------------------------

  pressTeleop(command: TeleopCommand): Promise<void> {
    return this.transport.teleop(command);
  }

  /** Buttons are momentary: the UI calls this on release. */
  releaseTeleop(): Promise<void> {
    return this.transport.teleop("stop");
  }

  async reset(): Promise<void> {
    await this.transport.reset();
    // session time restarts, so the ordering watermarks must too
    this.lastSeq = -Infinity;
    this.lastT = -Infinity;
    this.turns.length = 0;
    this.series.length = 0;
    this.view.transcript(this.turns);
  }
}
