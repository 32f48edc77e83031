import { HttpTransport } from "./transport.js";
import { StateStream } from "./stream.js";
import { ConsoleViewModel } from "./viewmodel.js";
import { ConsoleRenderer } from "./render.js";
import type { TeleopCommand } from "./types.js";

// Page wiring. The page can be opened straight from disk, in which case the
// service address comes from ?api=; served pages default to their own origin.

function apiBase(): string {
  const override = new URLSearchParams(location.search).get("api");
  if (override) return override.replace(/\/$/, "");
  if (location.protocol.startsWith("http")) return location.origin;
  return "http://127.0.0.1:8080";
}

const KEY_COMMANDS: Record<string, TeleopCommand> = {
  ArrowUp: "forward",
  ArrowDown: "backward",
  ArrowLeft: "left",
  ArrowRight: "right",
  w: "forward",
  s: "backward",
  a: "left",
  d: "right",
};

function main(): void {
  const transport = new HttpTransport(apiBase());
  const renderer = new ConsoleRenderer(document);
  const vm = new ConsoleViewModel(transport, renderer);
  renderer.bindSeries(vm.series);
  renderer.stale(true); // nothing received yet

  const stream = new StateStream(transport, vm);
  transport
    .map()
    .then((map) => renderer.setMap(map))
    .catch(() => {
      // the map pane stays blank until a reload; the rest still works
    });
  stream.start();

  const input = document.getElementById("say") as HTMLInputElement;
  const sendBtn = document.getElementById("send") as HTMLButtonElement;

  const refreshSend = () => {
    sendBtn.disabled = !vm.canSend(input.value);
  };
  input.addEventListener("input", refreshSend);
  refreshSend();

  const submit = () => {
    const text = input.value;
    if (!vm.canSend(text)) return;
    input.value = "";
    refreshSend();
    void vm.send(text);
  };
  sendBtn.addEventListener("click", submit);
  input.addEventListener("keydown", (e) => {
    if (e.key === "Enter") submit();
  });

  // failed turns render a retry button; catch it on the way up
  document.getElementById("transcript")?.addEventListener("click", (e) => {
    const target = e.target as HTMLElement;
    const index = target.dataset?.retry;
    if (index !== undefined) void vm.retry(Number(index));
  });

  // teleop is momentary contact: the command goes out on press and the stop
  // goes out on release, whichever way the press ends
  let held: TeleopCommand | null = null;
  const press = (cmd: TeleopCommand) => {
    if (held) return;
    held = cmd;
    void vm.pressTeleop(cmd);
  };
  const release = () => {
    if (!held) return;
    held = null;
    void vm.releaseTeleop();
  };

  document.querySelectorAll<HTMLElement>("[data-teleop]").forEach((btn) => {
    const cmd = btn.dataset.teleop as TeleopCommand;
    btn.addEventListener("pointerdown", () => press(cmd));
    btn.addEventListener("pointerup", release);
    btn.addEventListener("pointerleave", release);
  });
  document.addEventListener("keydown", (e) => {
    if (e.repeat || e.target === input) return;
    const cmd = KEY_COMMANDS[e.key];
    if (cmd) press(cmd);
  });
  document.addEventListener("keyup", (e) => {
    if (KEY_COMMANDS[e.key]) release();
  });

  document.getElementById("reset")?.addEventListener("click", () => {
    void vm.reset();
  });
}

main();
