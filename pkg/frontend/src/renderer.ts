// Canvas-2D painting of a presentation frame: camera transform, elements
// in z-order, ink replay state, and the live annotation layer.

import type { Viewport } from "./geometry.js";
import { replayVisible, strokePrefix, type InkSample, type Stroke, type StrokeCollection } from "./ink.js";
import type { ElementJson, Presentation } from "./model.js";

const MIN_WIDTH_FRACTION = 0.1;

function cssColor(rgba: [number, number, number, number]): string {
  const [r, g, b, a] = rgba;
  return `rgba(${Math.round(r * 255)}, ${Math.round(g * 255)}, ${Math.round(b * 255)}, ${a})`;
}

export class AssetCache {
  private images = new Map<string, HTMLImageElement | "error">();

  constructor(private onLoad: () => void) {}

  get(url: string): HTMLImageElement | "error" | "loading" {
    const hit = this.images.get(url);
    if (hit) return hit;
    const img = new Image();
    img.onload = () => {
      this.images.set(url, img);
      this.onLoad();
    };
    img.onerror = () => {
      console.error(`canvasflow player: missing or unreadable asset ${url}`);
      this.images.set(url, "error");
      this.onLoad();
    };
    img.src = url;
    return "loading";
  }
}

function setCameraTransform(
  ctx: CanvasRenderingContext2D,
  v: Viewport,
  screen: [number, number],
  dpr: number,
): void {
  const cos = Math.cos(v.rotation);
  const sin = Math.sin(v.rotation);
  const a = v.zoom * cos;
  const b = v.zoom * sin;
  const c = v.zoom * sin;
  const d = -v.zoom * cos;
  const e = screen[0] / 2 - (a * v.center[0] + c * v.center[1]);
  const f = screen[1] / 2 - (b * v.center[0] + d * v.center[1]);
  ctx.setTransform(dpr * a, dpr * b, dpr * c, dpr * d, dpr * e, dpr * f);
}

function drawPlaceholder(ctx: CanvasRenderingContext2D, w: number, h: number): void {
  ctx.fillStyle = "#d8d8d8";
  ctx.fillRect(-w / 2, -h / 2, w, h);
  ctx.strokeStyle = "#888888";
  ctx.lineWidth = Math.min(w, h) * 0.04;
  ctx.strokeRect(-w / 2, -h / 2, w, h);
  ctx.beginPath();
  ctx.moveTo(-w / 2, -h / 2);
  ctx.lineTo(w / 2, h / 2);
  ctx.moveTo(w / 2, -h / 2);
  ctx.lineTo(-w / 2, h / 2);
  ctx.stroke();
}

function drawShape(ctx: CanvasRenderingContext2D, el: ElementJson): void {
  const p = el.payload as Record<string, any>;
  ctx.fillStyle = typeof p.fill === "string" ? p.fill : "transparent";
  ctx.strokeStyle = typeof p.stroke === "string" ? p.stroke : "transparent";
  ctx.lineWidth = Number(p.stroke_width ?? 1);
  const shape = p.shape;
  if (shape === "rect") {
    const w = Number(p.w ?? 1);
    const h = Number(p.h ?? 1);
    if (p.fill) ctx.fillRect(-w / 2, -h / 2, w, h);
    if (p.stroke) ctx.strokeRect(-w / 2, -h / 2, w, h);
  } else if (shape === "ellipse") {
    ctx.beginPath();
    ctx.ellipse(0, 0, Number(p.rx ?? 1), Number(p.ry ?? 1), 0, 0, Math.PI * 2);
    if (p.fill) ctx.fill();
    if (p.stroke) ctx.stroke();
  } else if (shape === "polygon" && Array.isArray(p.points)) {
    ctx.beginPath();
    (p.points as [number, number][]).forEach(([x, y], i) =>
      i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y),
    );
    ctx.closePath();
    if (p.fill) ctx.fill();
    if (p.stroke) ctx.stroke();
  } else if (shape === "path" && typeof p.d === "string") {
    const path = new Path2D(p.d);
    if (p.fill) ctx.fill(path);
    if (p.stroke) ctx.stroke(path);
  }
}

function drawStrokeSamples(
  ctx: CanvasRenderingContext2D,
  samples: InkSample[],
  stroke: Stroke,
  opacity: number,
): void {
  if (samples.length === 0) return;
  ctx.strokeStyle = cssColor(stroke.color);
  ctx.fillStyle = cssColor(stroke.color);
  ctx.globalAlpha = opacity;
  ctx.lineCap = "round";
  ctx.lineJoin = "round";
  const width = (p: number) => stroke.baseWidth * (MIN_WIDTH_FRACTION + (1 - MIN_WIDTH_FRACTION) * p);
  if (samples.length === 1) {
    ctx.beginPath();
    ctx.arc(samples[0].x, samples[0].y, width(samples[0].pressure) / 2, 0, Math.PI * 2);
    ctx.fill();
  } else {
    for (let i = 1; i < samples.length; i++) {
      const a = samples[i - 1];
      const b = samples[i];
      ctx.beginPath();
      ctx.lineWidth = width((a.pressure + b.pressure) / 2);
      ctx.moveTo(a.x, a.y);
      ctx.lineTo(b.x, b.y);
      ctx.stroke();
    }
  }
  ctx.globalAlpha = 1;
}

function drawInk(
  ctx: CanvasRenderingContext2D,
  collection: StrokeCollection,
  clock: number,
  speed: number,
): void {
  for (const [index, fraction] of replayVisible(collection, clock, speed)) {
    const stroke = collection.strokes[index];
    const samples = fraction >= 1 ? stroke.samples : strokePrefix(stroke, fraction);
    drawStrokeSamples(ctx, samples, stroke, 1);
  }
}

export interface FrameInput {
  presentation: Presentation;
  viewport: Viewport;
  screen: [number, number];
  dpr: number;
  clock: number;
  replaySpeed: number;
  annotations: StrokeCollection;
  assets: AssetCache;
}

export function renderFrame(ctx: CanvasRenderingContext2D, input: FrameInput): void {
  const { presentation, viewport, screen, dpr } = input;
  ctx.setTransform(1, 0, 0, 1, 0, 0);
  ctx.fillStyle = cssColor(presentation.background);
  ctx.fillRect(0, 0, screen[0] * dpr, screen[1] * dpr);

  const ordered = presentation.elements
    .map((el, i) => [el, i] as const)
    .sort((a, b) => a[0].z_order - b[0].z_order || a[1] - b[1]);

  for (const [el] of ordered) {
    setCameraTransform(ctx, viewport, screen, dpr);
    ctx.translate(el.position[0], el.position[1]);
    ctx.rotate(el.rotation);
    ctx.scale(el.scale, el.scale);
    const p = el.payload as Record<string, any>;
    if (el.kind === "vector-shape") {
      drawShape(ctx, el);
    } else if (el.kind === "text") {
      ctx.scale(1, -1); // undo the camera's y-flip for glyphs
      ctx.fillStyle = typeof p.color === "string" ? p.color : "#000000";
      ctx.font = `${Number(p.size ?? 1)}px sans-serif`;
      ctx.textAlign = "center";
      ctx.textBaseline = "middle";
      ctx.fillText(String(p.text ?? ""), 0, 0);
    } else if (el.kind === "image-asset" || el.kind === "latex-asset" || el.kind === "pdf-page-asset") {
      const w = Number(p.width ?? 1);
      const h = Number(p.height ?? 1);
      const asset = input.assets.get(presentation.assetUrl(String(p.path ?? "")));
      ctx.scale(1, -1);
      if (asset instanceof Image) {
        ctx.drawImage(asset, -w / 2, -h / 2, w, h);
      } else {
        drawPlaceholder(ctx, w, h);
      }
    } else if (el.kind === "video-placeholder") {
      const w = Number(p.width ?? 16);
      const h = Number(p.height ?? 9);
      ctx.fillStyle = "#202020";
      ctx.fillRect(-w / 2, -h / 2, w, h);
      const r = Math.min(w, h) * 0.25;
      ctx.fillStyle = "#f0f0f0";
      ctx.beginPath();
      ctx.moveTo(-r * 0.5, r * 0.75);
      ctx.lineTo(-r * 0.5, -r * 0.75);
      ctx.lineTo(r, 0);
      ctx.closePath();
      ctx.fill();
    } else if (el.kind === "ink-ref") {
      const collection = presentation.ink.get(String(p.collection ?? ""));
      if (collection) drawInk(ctx, collection, input.clock, input.replaySpeed);
    }
  }

  // live annotations sit above everything and ignore the replay clock
  setCameraTransform(ctx, viewport, screen, dpr);
  for (const stroke of input.annotations.strokes) {
    drawStrokeSamples(ctx, stroke.samples, stroke, 0.9);
  }
  ctx.setTransform(1, 0, 0, 1, 0, 0);
}
