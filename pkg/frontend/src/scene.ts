import type { MapDoc, Snapshot } from "./types.js";

// Map geometry helpers. All pure; the canvas layer multiplies the normalized
// coordinates by its pixel size so nothing here depends on the DOM.

export interface NormPoint {
  u: number;
  v: number;
}

export interface Cell {
  row: number;
  col: number;
}

/** World metres to normalized [0, 1] canvas space. Row 0 is the top of the
 * glyph document and y grows downward, same as canvas coordinates. */
export function worldToNorm(map: MapDoc, x: number, y: number): NormPoint {
  return {
    u: x / (map.width * map.resolution),
    v: y / (map.height * map.resolution),
  };
}

export function cellOf(map: MapDoc, x: number, y: number): Cell {
  return {
    row: Math.floor(y / map.resolution),
    col: Math.floor(x / map.resolution),
  };
}

export function cssColor(rgb: number[]): string {
  const [r, g, b] = rgb;
  return `rgb(${r}, ${g}, ${b})`;
}

export interface Scene {
  marker: NormPoint;
  theta: number;
  plan: NormPoint[];
  visited: string[];
  phase: string;
}

/** What the map pane needs from one snapshot, in normalized coordinates. */
export function sceneFrom(map: MapDoc, snap: Snapshot): Scene {
  return {
    marker: worldToNorm(map, snap.pose.x, snap.pose.y),
    theta: snap.pose.theta,
    plan: snap.plan.map(([x, y]) => worldToNorm(map, x, y)),
    visited: snap.dialogue.visited,
    phase: snap.dialogue.phase,
  };
}
