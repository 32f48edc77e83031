import type { MapDoc, Snapshot } from "./types.js";
import { cssColor, sceneFrom } from "./scene.js";
import type { ConsoleView, TranscriptTurn } from "./viewmodel.js";
import type { SeriesPoint } from "./viewmodel.js";

// DOM projection of the view model. Everything interesting happens upstream;
// this file just paints whatever state it is handed.

const GAUGE_RANGES: Record<string, [number, number]> = {
  s: [-5, 5],
  speed: [0.25, 0.75],
  voice: [0.9, 1.1],
  head: [-0.2, 0.2],
};

function pct(value: number, lo: number, hi: number): string {
  const f = Math.min(1, Math.max(0, (value - lo) / (hi - lo)));
  return `${(f * 100).toFixed(1)}%`;
}

export class ConsoleRenderer implements ConsoleView {
  private readonly root: Document;
  private map: MapDoc | null = null;
  private series: readonly SeriesPoint[] = [];

  constructor(root: Document) {
    this.root = root;
  }

  setMap(map: MapDoc): void {
    this.map = map;
  }

  bindSeries(series: readonly SeriesPoint[]): void {
    this.series = series;
  }

  private el(id: string): HTMLElement | null {
    return this.root.getElementById(id);
  }

  private text(id: string, value: string): void {
    const node = this.el(id);
    if (node) node.textContent = value;
  }

  private gauge(name: string, value: number, digits: number): void {
    this.text(`gauge-${name}`, value.toFixed(digits));
    const bar = this.el(`bar-${name}`);
    if (bar) {
      const [lo, hi] = GAUGE_RANGES[name] ?? [0, 1];
      bar.style.width = pct(value, lo, hi);
    }
  }

  frame(snap: Snapshot): void {
    const b = snap.behavior;
    this.gauge("s", b.s, 0);
    this.gauge("speed", b.speed, 2);
    this.gauge("voice", b.voice_pitch, 2);
    this.gauge("head", b.head_pitch, 2);
    const led = this.el("led");
    if (led) led.style.backgroundColor = cssColor(b.led_rgb);
    this.text("phase", snap.dialogue.phase);
    this.text("clock", `t = ${snap.t.toFixed(1)} s`);
    this.text(
      "visited",
      snap.dialogue.visited.length ? snap.dialogue.visited.join(", ") : "none yet",
    );
    if (snap.last_response) this.text("robot-says", snap.last_response);
    this.paintMap(snap);
    this.paintSeries();
  }

  transcript(turns: readonly TranscriptTurn[]): void {
    const list = this.el("transcript");
    if (!list) return;
    list.replaceChildren();
    turns.forEach((turn, i) => {
      const li = this.root.createElement("li");
      li.className = `turn turn-${turn.status}`;
      const badge = this.root.createElement("span");
      badge.className = `badge badge-${turn.badge ?? "pending"}`;
      badge.textContent = turn.badge ?? "…";
      li.appendChild(badge);
      const said = this.root.createElement("span");
      said.className = "said";
      said.textContent = turn.text;
      li.appendChild(said);
      if (turn.response) {
        const reply = this.root.createElement("span");
        reply.className = "reply";
        reply.textContent = turn.response;
        li.appendChild(reply);
      }
      if (turn.status === "failed") {
        const note = this.root.createElement("span");
        note.className = "error";
        note.textContent = turn.error ?? "request failed";
        li.appendChild(note);
        const retry = this.root.createElement("button");
        retry.textContent = "retry";
        retry.dataset.retry = String(i);
        li.appendChild(retry);
      }
      list.appendChild(li);
    });
    const pane = this.el("chat");
    if (pane) pane.scrollTop = pane.scrollHeight;
  }

  stale(isStale: boolean): void {
    const banner = this.el("stale");
    if (banner) banner.hidden = !isStale;
  }

  // -- canvases ---------------------------------------------------------------

  private paintMap(snap: Snapshot): void {
    const map = this.map;
    const canvas = this.el("map") as HTMLCanvasElement | null;
    if (!map || !canvas) return;
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    const w = canvas.width;
    const h = canvas.height;
    const cw = w / map.width;
    const ch = h / map.height;

    ctx.fillStyle = "#10141c";
    ctx.fillRect(0, 0, w, h);
    ctx.fillStyle = "#3a4458";
    map.rows.forEach((row, r) => {
      for (let c = 0; c < row.length; c++) {
        if (row[c] === "#") ctx.fillRect(c * cw, r * ch, cw + 0.5, ch + 0.5);
      }
    });

    ctx.font = `${Math.round(ch * 2)}px sans-serif`;
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    for (const [name, loc] of Object.entries(map.locations)) {
      const hit = snap.dialogue.visited.includes(name);
      ctx.fillStyle = hit ? "#67d08a" : "#8089a0";
      ctx.fillText(name[0].toUpperCase(), (loc.col + 0.5) * cw, (loc.row + 0.5) * ch);
    }

    const scene = sceneFrom(map, snap);
    if (scene.plan.length > 1) {
      ctx.strokeStyle = "#4f8ef7";
      ctx.lineWidth = 2;
      ctx.beginPath();
      scene.plan.forEach((p, i) => {
        if (i === 0) ctx.moveTo(p.u * w, p.v * h);
        else ctx.lineTo(p.u * w, p.v * h);
      });
      ctx.stroke();
    }

    // marker: a little triangle nosed along theta
    const mx = scene.marker.u * w;
    const my = scene.marker.v * h;
    ctx.save();
    ctx.translate(mx, my);
    ctx.rotate(scene.theta);
    ctx.fillStyle = "#f7c84f";
    ctx.beginPath();
    ctx.moveTo(9, 0);
    ctx.lineTo(-6, 5.5);
    ctx.lineTo(-6, -5.5);
    ctx.closePath();
    ctx.fill();
    ctx.restore();
  }

  private paintSeries(): void {
    const canvas = this.el("series") as HTMLCanvasElement | null;
    if (!canvas || this.series.length < 2) return;
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    const w = canvas.width;
    const h = canvas.height;
    ctx.fillStyle = "#10141c";
    ctx.fillRect(0, 0, w, h);

    const n = this.series.length;
    const x = (i: number) => (i / (n - 1)) * w;
    const line = (pick: (p: SeriesPoint) => number, lo: number, hi: number, color: string) => {
      ctx.strokeStyle = color;
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      this.series.forEach((p, i) => {
        const y = h - ((pick(p) - lo) / (hi - lo)) * h;
        if (i === 0) ctx.moveTo(x(i), y);
        else ctx.lineTo(x(i), y);
      });
      ctx.stroke();
    };
    line((p) => p.s, -5, 5, "#f7c84f");
    line((p) => p.speed, 0.25, 0.75, "#4f8ef7");
  }
}
