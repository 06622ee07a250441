// Viewport math mirroring the engine: linear center, geometric zoom,
// shortest-arc rotation (counterclockwise on an exact half-turn tie).
// Shared debug-state vectors pin this file to the core implementation.

export interface Viewport {
  center: [number, number];
  zoom: number;
  rotation: number;
}

export interface RectBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export type Easing = "linear" | "smoothstep";

const TAU = Math.PI * 2;

export function normalizeAngle(radians: number): number {
  const r = ((radians % TAU) + TAU) % TAU;
  return r >= TAU ? 0 : r;
}

export function shortestArc(a: number, b: number): number {
  let delta = (((b - a) % TAU) + TAU) % TAU;
  if (delta > Math.PI) delta -= TAU;
  return delta;
}

export function smoothstep(t: number): number {
  return t * t * (3 - 2 * t);
}

export function applyEasing(easing: Easing, t: number): number {
  return easing === "smoothstep" ? smoothstep(t) : t;
}

export function interpolateViewport(a: Viewport, b: Viewport, t: number): Viewport {
  if (t < 0 || t > 1) throw new RangeError(`interpolation parameter ${t} outside [0, 1]`);
  if (t === 0) return { center: [a.center[0], a.center[1]], zoom: a.zoom, rotation: normalizeAngle(a.rotation) };
  if (t === 1) return { center: [b.center[0], b.center[1]], zoom: b.zoom, rotation: normalizeAngle(b.rotation) };
  const cx = a.center[0] * (1 - t) + b.center[0] * t;
  const cy = a.center[1] * (1 - t) + b.center[1] * t;
  const zoom = Math.exp((1 - t) * Math.log(a.zoom) + t * Math.log(b.zoom));
  const na = normalizeAngle(a.rotation);
  const rotation = normalizeAngle(na + t * shortestArc(na, normalizeAngle(b.rotation)));
  return { center: [cx, cy], zoom, rotation };
}

export function canvasToScreen(
  p: [number, number],
  v: Viewport,
  screen: [number, number],
): [number, number] {
  const [w, h] = screen;
  const dx = p[0] - v.center[0];
  const dy = p[1] - v.center[1];
  const cos = Math.cos(v.rotation);
  const sin = Math.sin(v.rotation);
  const rx = cos * dx + sin * dy;
  const ry = -sin * dx + cos * dy;
  return [w / 2 + v.zoom * rx, h / 2 - v.zoom * ry];
}

export function screenToCanvas(
  p: [number, number],
  v: Viewport,
  screen: [number, number],
): [number, number] {
  const [w, h] = screen;
  const rx = (p[0] - w / 2) / v.zoom;
  const ry = (h / 2 - p[1]) / v.zoom;
  const cos = Math.cos(v.rotation);
  const sin = Math.sin(v.rotation);
  return [v.center[0] + cos * rx - sin * ry, v.center[1] + sin * rx + cos * ry];
}

export function frameBounds(
  bbox: RectBox,
  screen: [number, number],
  marginFraction: number,
): Viewport {
  if (marginFraction < 0 || marginFraction >= 0.5) {
    throw new RangeError(`margin fraction ${marginFraction} outside [0, 0.5)`);
  }
  if (bbox.width <= 0 || bbox.height <= 0) {
    throw new RangeError(`cannot frame zero-area rectangle`);
  }
  const pad = 1 + marginFraction;
  const zoom = Math.min(screen[0] / (bbox.width * pad), screen[1] / (bbox.height * pad));
  return {
    center: [bbox.x + bbox.width / 2, bbox.y + bbox.height / 2],
    zoom,
    rotation: 0,
  };
}
