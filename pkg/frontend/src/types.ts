// Documents exchanged with the polibot HTTP service. Field names follow the
// wire format exactly; nothing here is computed client side.

export interface Pose {
  x: number;
  y: number;
  theta: number;
}

export interface Behavior {
  s: number;
  speed: number;
  head_pitch: number;
  voice_pitch: number;
  led_rgb: number[];
}

export interface Dialogue {
  phase: string;
  visited: string[];
  awaiting: string | null;
}

export interface Snapshot {
  t: number;
  pose: Pose;
  behavior: Behavior;
  dialogue: Dialogue;
  plan: number[][];
  last_response: string;
  seq: number;
}

/** Reply to POST /api/utterance. The politeness class the badge shows comes
 * from dop_discrete; the console never rescored the text. */
export interface TurnReply {
  da: string | null;
  slots: Record<string, string>;
  da_confidence: number | null;
  source: string | null;
  dop_continuous: number | null;
  dop_discrete: number | null;
  response: string;
  snapshot: Snapshot;
}

export interface MapLocation {
  row: number;
  col: number;
  x: number;
  y: number;
}

export interface MapDoc {
  resolution: number;
  width: number;
  height: number;
  rows: string[];
  locations: Record<string, MapLocation>;
}

export type TeleopCommand = "forward" | "backward" | "left" | "right" | "stop";

export const TELEOP_COMMANDS: readonly TeleopCommand[] = [
  "forward",
  "backward",
  "left",
  "right",
  "stop",
];
