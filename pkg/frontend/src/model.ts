// Bundle and project JSON shapes (engine schema v1), plus decoding into
// the player's in-memory presentation.

import type { Viewport, RectBox, Easing } from "./geometry.js";
import type { Stroke, StrokeCollection } from "./ink.js";

export interface ManifestAsset {
  source: string;
  path: string;
}

export interface Manifest {
  format: number;
  title: string;
  project: string;
  step_count: number;
  assets: ManifestAsset[];
  defaults: { slide_margin: number; slide_transition: number };
}

export interface ElementJson {
  id: string;
  kind: string;
  position: [number, number];
  scale: number;
  rotation: number;
  z_order: number;
  payload: Record<string, unknown>;
}

export interface SlideJson {
  id: string;
  frame: [number, number, number, number];
  element_ids: string[];
}

export interface KeyframeJson {
  viewport: { center: [number, number]; zoom: number; rotation: number };
  transition_duration: number;
  dwell_duration: number;
  easing: Easing;
}

export type StepJson =
  | { type: "nonlinear"; keyframe: KeyframeJson }
  | { type: "linear"; slide_id: string };

export interface ProjectJson {
  format: number;
  metadata: { title: string; author: string; background: [number, number, number, number] };
  elements: ElementJson[];
  slides: SlideJson[];
  flow: StepJson[];
  ink: {
    id: string;
    strokes: {
      samples: [number, number, number][];
      start_time: number;
      finish_time: number;
      color: [number, number, number, number];
      base_width: number;
    }[];
  }[];
}

export interface Keyframe {
  viewport: Viewport;
  transitionDuration: number;
  dwellDuration: number;
  easing: Easing;
}

export interface Presentation {
  title: string;
  background: [number, number, number, number];
  elements: ElementJson[];
  slides: Map<string, RectBox>;
  flow: StepJson[];
  ink: Map<string, StrokeCollection>;
  slideMargin: number;
  slideTransition: number;
  /** Resolves a bundle-relative asset path to a fetchable URL. */
  assetUrl: (path: string) => string;
}

export function decodeInk(project: ProjectJson): Map<string, StrokeCollection> {
  const out = new Map<string, StrokeCollection>();
  for (const coll of project.ink ?? []) {
    const strokes: Stroke[] = coll.strokes.map((s) => ({
      samples: s.samples.map(([x, y, pressure]) => ({ x, y, pressure })),
      startTime: s.start_time,
      finishTime: s.finish_time,
      color: s.color,
      baseWidth: s.base_width,
    }));
    strokes.sort((a, b) => a.startTime - b.startTime);
    out.set(coll.id, { id: coll.id, strokes });
  }
  return out;
}

export function decodeSlides(project: ProjectJson): Map<string, RectBox> {
  const out = new Map<string, RectBox>();
  for (const slide of project.slides ?? []) {
    const [x, y, width, height] = slide.frame;
    out.set(slide.id, { x, y, width, height });
  }
  return out;
}

export function buildPresentation(
  manifest: Manifest,
  project: ProjectJson,
  assetUrl: (path: string) => string,
): Presentation {
  if (project.format !== 1) throw new Error(`unsupported project format ${project.format}`);
  if (manifest.format !== 1) throw new Error(`unsupported manifest format ${manifest.format}`);
  return {
    title: manifest.title || project.metadata?.title || "",
    background: project.metadata?.background ?? [1, 1, 1, 1],
    elements: project.elements ?? [],
    slides: decodeSlides(project),
    flow: project.flow ?? [],
    ink: decodeInk(project),
    slideMargin: manifest.defaults?.slide_margin ?? 0.05,
    slideTransition: manifest.defaults?.slide_transition ?? 1.0,
    assetUrl,
  };
}
