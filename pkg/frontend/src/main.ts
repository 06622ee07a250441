// Entry point: wire bundle loading, the animation loop, keyboard
// navigation, and pointer annotation onto the page canvas.

import { addStroke, beginStroke, extendStroke, finishStroke, type ActiveStroke } from "./annotate.js";
import { loadBundle } from "./bundleLoader.js";
import type { Presentation } from "./model.js";
import { currentViewport, initialState, navigate, setReplaySpeed, tick, toggleMode, type PlayerState } from "./player.js";
import { commandForKey } from "./keyboard.js";
import { formatStrokeLog } from "./ink.js";
import { AssetCache, renderFrame } from "./renderer.js";

const ANNOTATION_COLOR: [number, number, number, number] = [0.85, 0.1, 0.1, 1.0];
const ANNOTATION_WIDTH_PX = 3;

function statusLine(state: PlayerState, stepCount: number): string {
  const mode = state.mode === "annotate" ? " | annotate (A to exit)" : "";
  const end = state.atEnd ? " | end of flow" : "";
  return `step ${state.cursor + 1}/${stepCount} | speed ${state.replaySpeed}x${mode}${end}`;
}

async function start(): Promise<void> {
  const canvas = document.getElementById("stage") as HTMLCanvasElement;
  const status = document.getElementById("status") as HTMLElement;
  const exportButton = document.getElementById("export-log") as HTMLButtonElement;
  const ctx = canvas.getContext("2d")!;

  const params = new URLSearchParams(window.location.search);
  const bundleUrl = params.get("bundle") ?? "tests/fixtures/bundle";

  let presentation: Presentation;
  try {
    presentation = await loadBundle(bundleUrl);
  } catch (error) {
    status.textContent = `failed to load bundle ${bundleUrl}: ${error}`;
    console.error(error);
    return;
  }
  document.title = presentation.title || "canvasflow player";

  let state = initialState();
  let active: ActiveStroke | null = null;
  const assets = new AssetCache(() => draw());

  function screenSize(): [number, number] {
    return [canvas.clientWidth, canvas.clientHeight];
  }

  function resize(): void {
    const dpr = window.devicePixelRatio || 1;
    canvas.width = Math.round(canvas.clientWidth * dpr);
    canvas.height = Math.round(canvas.clientHeight * dpr);
    draw();
  }

  function draw(): void {
    if (!presentation.flow.length) {
      status.textContent = "bundle has no flow steps";
      return;
    }
    const screen = screenSize();
    const dpr = window.devicePixelRatio || 1;
    renderFrame(ctx, {
      presentation,
      viewport: currentViewport(presentation, state, screen),
      screen,
      dpr,
      clock: state.clock,
      replaySpeed: state.replaySpeed,
      annotations: state.annotations,
      assets,
    });
    status.textContent = statusLine(state, presentation.flow.length);
  }

  let last = performance.now();
  function loop(now: number): void {
    const dt = Math.min(0.1, (now - last) / 1000);
    last = now;
    state = tick(state, dt);
    draw();
    requestAnimationFrame(loop);
  }

  window.addEventListener("keydown", (event) => {
    const command = commandForKey(event.key);
    if (!command) return;
    event.preventDefault();
    if (command.kind === "navigate") {
      state = navigate(presentation, state, command.direction, screenSize());
    } else if (command.kind === "toggle-annotate") {
      state = toggleMode(state);
    } else {
      state = setReplaySpeed(state, state.replaySpeed * command.factor);
    }
  });

  canvas.addEventListener("pointerdown", (event) => {
    if (state.mode !== "annotate") return;
    canvas.setPointerCapture(event.pointerId);
    const viewport = currentViewport(presentation, state, screenSize());
    active = beginStroke(
      { screenX: event.offsetX, screenY: event.offsetY, pressure: event.pressure, timeSeconds: state.clock },
      viewport,
      screenSize(),
    );
  });

  canvas.addEventListener("pointermove", (event) => {
    if (!active) return;
    const viewport = currentViewport(presentation, state, screenSize());
    active = extendStroke(
      active,
      { screenX: event.offsetX, screenY: event.offsetY, pressure: event.pressure, timeSeconds: state.clock },
      viewport,
      screenSize(),
    );
  });

  const endStroke = () => {
    if (!active) return;
    const viewport = currentViewport(presentation, state, screenSize());
    const widthCanvasUnits = ANNOTATION_WIDTH_PX / viewport.zoom;
    state = {
      ...state,
      annotations: addStroke(state.annotations, finishStroke(active, ANNOTATION_COLOR, widthCanvasUnits)),
    };
    active = null;
  };
  canvas.addEventListener("pointerup", endStroke);
  canvas.addEventListener("pointercancel", () => {
    active = null;
  });

  exportButton.addEventListener("click", () => {
    const log = formatStrokeLog(state.annotations);
    const blob = new Blob([log], { type: "text/plain" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "annotations.log";
    link.click();
    URL.revokeObjectURL(link.href);
  });

  window.addEventListener("resize", resize);
  resize();
  requestAnimationFrame(loop);
}

start();
