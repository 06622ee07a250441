// Annotation capture and the cross-component stroke-log round trip: the
// player's export must survive an import/re-export through the engine
// with stroke count and vertices intact (1e-6).

import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import path from "node:path";

import { describe, expect, it } from "vitest";

import {
  addStroke,
  beginStroke,
  capturePressure,
  extendStroke,
  finishStroke,
  DEFAULT_POINTER_PRESSURE,
} from "../src/annotate.js";
import { collectionFromLog, formatStrokeLog, type StrokeCollection } from "../src/ink.js";
import type { Viewport } from "../src/geometry.js";

const VIEW: Viewport = { center: [0, 0], zoom: 2, rotation: 0 };
const SCREEN: [number, number] = [800, 600];
const RED: [number, number, number, number] = [0.85, 0.1, 0.1, 1];

function drag(points: [number, number, number][], t0 = 0): StrokeCollection {
  let active = beginStroke(
    { screenX: points[0][0], screenY: points[0][1], pressure: points[0][2], timeSeconds: t0 },
    VIEW,
    SCREEN,
  );
  points.slice(1).forEach(([x, y, p], i) => {
    active = extendStroke(
      active,
      { screenX: x, screenY: y, pressure: p, timeSeconds: t0 + 0.1 * (i + 1) },
      VIEW,
      SCREEN,
    );
  });
  return addStroke({ id: "annotations", strokes: [] }, finishStroke(active, RED, 1.5));
}

describe("capture", () => {
  it("one drag produces one stroke with all samples", () => {
    const layer = drag([
      [100, 100, 0.8],
      [140, 120, 0.9],
      [180, 160, 0.7],
    ]);
    expect(layer.strokes.length).toBe(1);
    expect(layer.strokes[0].samples.length).toBe(3);
    expect(layer.strokes[0].finishTime).toBeGreaterThan(layer.strokes[0].startTime);
  });

  it("pressure-less pointers get the 0.5 default", () => {
    expect(capturePressure(0)).toBe(DEFAULT_POINTER_PRESSURE);
    expect(capturePressure(Number.NaN)).toBe(DEFAULT_POINTER_PRESSURE);
    expect(capturePressure(0.73)).toBe(0.73);
    const layer = drag([
      [10, 10, 0],
      [20, 20, 0],
    ]);
    for (const sample of layer.strokes[0].samples) {
      expect(sample.pressure).toBe(DEFAULT_POINTER_PRESSURE);
    }
  });

  it("samples land in canvas coordinates", () => {
    const layer = drag([[400, 300, 1]]); // screen center maps to the viewport center
    const s = layer.strokes[0].samples[0];
    expect(s.x).toBeCloseTo(0, 12);
    expect(s.y).toBeCloseTo(0, 12);
  });
});

describe("stroke log round trips", () => {
  const layer = (() => {
    let out = drag(
      [
        [100, 100, 0.8],
        [140, 120, 0.9],
        [180, 160, 0.7],
      ],
      0,
    );
    const second = drag(
      [
        [300, 220, 0],
        [340, 260, 0],
      ],
      1.5,
    );
    return addStroke(out, second.strokes[0]);
  })();

  it("player export -> player import is lossless", () => {
    const text = formatStrokeLog(layer);
    const back = collectionFromLog(text, "annotations");
    expect(back.strokes.length).toBe(layer.strokes.length);
    back.strokes.forEach((stroke, i) => {
      const original = layer.strokes[i];
      expect(stroke.samples.length).toBe(original.samples.length);
      stroke.samples.forEach((s, j) => {
        expect(Math.abs(s.x - original.samples[j].x)).toBeLessThanOrEqual(1e-6);
        expect(Math.abs(s.y - original.samples[j].y)).toBeLessThanOrEqual(1e-6);
      });
    });
    expect(formatStrokeLog(back)).toBe(text);
  });

  it("player export -> engine import -> re-export preserves count and vertices", () => {
    const exported = formatStrokeLog(layer);
    const dir = mkdtempSync(path.join(tmpdir(), "cfp-"));
    const logPath = path.join(dir, "annotations.log");
    writeFileSync(logPath, exported);

    // round-trip through the installed engine package
    const script = [
      "import json, sys",
      "from canvasflow.ink import import_stroke_log, format_stroke_log",
      "text = open(sys.argv[1], encoding='utf-8').read()",
      "coll = import_stroke_log(text, 'annotations')",
      "open(sys.argv[2], 'w', encoding='utf-8').write(format_stroke_log(coll))",
      "print(json.dumps([[list(s.position) + [s.pressure] for s in st.samples] for st in coll.strokes]))",
    ].join("\n");
    const reexportPath = path.join(dir, "reexport.log");
    const stdout = execFileSync("python3", ["-c", script, logPath, reexportPath], {
      encoding: "utf-8",
    });

    const engineStrokes: number[][][] = JSON.parse(stdout.trim());
    expect(engineStrokes.length).toBe(layer.strokes.length);
    layer.strokes.forEach((stroke, i) => {
      expect(engineStrokes[i].length).toBe(stroke.samples.length);
      stroke.samples.forEach((s, j) => {
        expect(Math.abs(engineStrokes[i][j][0] - s.x)).toBeLessThanOrEqual(1e-6);
        expect(Math.abs(engineStrokes[i][j][1] - s.y)).toBeLessThanOrEqual(1e-6);
        expect(Math.abs(engineStrokes[i][j][2] - s.pressure)).toBeLessThanOrEqual(1e-6);
      });
    });

    // and the engine's re-export parses back in the player, still matching
    const again = collectionFromLog(readFileSync(reexportPath, "utf-8"), "annotations");
    expect(again.strokes.length).toBe(layer.strokes.length);
    again.strokes.forEach((stroke, i) => {
      stroke.samples.forEach((s, j) => {
        expect(Math.abs(s.x - layer.strokes[i].samples[j].x)).toBeLessThanOrEqual(1e-6);
        expect(Math.abs(s.y - layer.strokes[i].samples[j].y)).toBeLessThanOrEqual(1e-6);
      });
    });
  });
});
