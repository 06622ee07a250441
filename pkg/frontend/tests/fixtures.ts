// Fixture loading helpers. debug_states.json and bundle/ are emitted by
// the engine CLI (render --emit-debug-states, export) and committed.

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import path from "node:path";

import { buildPresentation, type Manifest, type ProjectJson, type Presentation } from "../src/model.js";

export const FIXTURES_DIR = path.dirname(fileURLToPath(import.meta.url)) + "/fixtures";

export interface DebugViewport {
  center: [number, number];
  zoom: number;
  rotation: number;
}

export interface DebugStates {
  format: number;
  screen: [number, number];
  fps: number;
  slide_margin: number;
  step_viewports: DebugViewport[];
  step_durations: { transition: number; dwell: number; easing: "linear" | "smoothstep" }[];
  frame_count: number;
  interpolation: { a: DebugViewport; b: DebugViewport; t: number; result: DebugViewport }[];
  ink_reveal: { collection: string; speed: number; samples: { t: number; visible: [number, number][] }[] }[];
}

export function loadDebugStates(): DebugStates {
  return JSON.parse(readFileSync(path.join(FIXTURES_DIR, "debug_states.json"), "utf-8"));
}

export function loadBundleFixture(): { manifest: Manifest; project: ProjectJson; presentation: Presentation } {
  const bundleDir = path.join(FIXTURES_DIR, "bundle");
  const manifest: Manifest = JSON.parse(readFileSync(path.join(bundleDir, "manifest.json"), "utf-8"));
  const project: ProjectJson = JSON.parse(
    readFileSync(path.join(bundleDir, manifest.project), "utf-8"),
  );
  const presentation = buildPresentation(manifest, project, (p) => path.join(bundleDir, p));
  return { manifest, project, presentation };
}
