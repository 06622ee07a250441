// Live annotation capture: pointer events with pressure accumulate into
// strokes on the annotation layer, exportable as the engine's stroke log.

import type { Viewport } from "./geometry.js";
import { screenToCanvas } from "./geometry.js";
import type { InkSample, Stroke, StrokeCollection } from "./ink.js";

// Mice and some touch hardware report pressure 0; capture falls back to
// a neutral half-pressure so width modulation stays reasonable.
export const DEFAULT_POINTER_PRESSURE = 0.5;

export interface PointerPoint {
  screenX: number;
  screenY: number;
  /** 0 means "not reported" on most non-stylus hardware. */
  pressure: number;
  timeSeconds: number;
}

export interface ActiveStroke {
  samples: InkSample[];
  startTime: number;
  lastTime: number;
}

export function capturePressure(raw: number): number {
  if (!Number.isFinite(raw) || raw <= 0) return DEFAULT_POINTER_PRESSURE;
  return Math.min(1, raw);
}

export function beginStroke(
  point: PointerPoint,
  viewport: Viewport,
  screen: [number, number],
): ActiveStroke {
  const [x, y] = screenToCanvas([point.screenX, point.screenY], viewport, screen);
  return {
    samples: [{ x, y, pressure: capturePressure(point.pressure) }],
    startTime: point.timeSeconds,
    lastTime: point.timeSeconds,
  };
}

export function extendStroke(
  active: ActiveStroke,
  point: PointerPoint,
  viewport: Viewport,
  screen: [number, number],
): ActiveStroke {
  const [x, y] = screenToCanvas([point.screenX, point.screenY], viewport, screen);
  return {
    samples: [...active.samples, { x, y, pressure: capturePressure(point.pressure) }],
    startTime: active.startTime,
    lastTime: point.timeSeconds,
  };
}

export function finishStroke(
  active: ActiveStroke,
  color: [number, number, number, number],
  baseWidth: number,
): Stroke {
  return {
    samples: active.samples,
    startTime: active.startTime,
    finishTime: Math.max(active.lastTime, active.startTime),
    color,
    baseWidth,
  };
}

export function addStroke(layer: StrokeCollection, stroke: Stroke): StrokeCollection {
  const strokes = [...layer.strokes, stroke].sort((a, b) => a.startTime - b.startTime);
  return { id: layer.id, strokes };
}
