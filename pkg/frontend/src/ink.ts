// Ink replay and annotation capture, matching the engine's reveal
// semantics and its plain-text stroke log format.

export interface InkSample {
  x: number;
  y: number;
  pressure: number;
}

export interface Stroke {
  samples: InkSample[];
  startTime: number;
  finishTime: number;
  color: [number, number, number, number];
  baseWidth: number;
}

export interface StrokeCollection {
  id: string;
  strokes: Stroke[];
}

export type Reveal = [index: number, fraction: number];

/**
 * Visible strokes at presentation time t with replay speed applied.
 * Finished strokes report 1, unstarted strokes are omitted, a stroke
 * straddling tau reports its elapsed fraction (0 exactly at its start).
 */
export function replayVisible(collection: StrokeCollection, t: number, speed: number): Reveal[] {
  if (speed <= 0) throw new RangeError(`replay speed must be positive, got ${speed}`);
  if (t < 0) throw new RangeError(`replay time must be non-negative, got ${t}`);
  const tau = t * speed;
  const out: Reveal[] = [];
  collection.strokes.forEach((stroke, index) => {
    if (stroke.startTime > tau) return;
    if (stroke.finishTime <= tau) {
      out.push([index, 1]);
    } else {
      out.push([index, (tau - stroke.startTime) / (stroke.finishTime - stroke.startTime)]);
    }
  });
  return out;
}

/** Samples spanning the given fraction of total arc length, cut interpolated. */
export function strokePrefix(stroke: Stroke, fraction: number): InkSample[] {
  if (fraction >= 1) return stroke.samples.slice();
  if (fraction <= 0) return [];
  const lengths = [0];
  for (let i = 1; i < stroke.samples.length; i++) {
    const a = stroke.samples[i - 1];
    const b = stroke.samples[i];
    lengths.push(lengths[i - 1] + Math.hypot(b.x - a.x, b.y - a.y));
  }
  const total = lengths[lengths.length - 1];
  if (total === 0) return stroke.samples.slice();
  const target = fraction * total;
  const prefix: InkSample[] = [stroke.samples[0]];
  for (let i = 1; i < stroke.samples.length; i++) {
    if (lengths[i] <= target) {
      prefix.push(stroke.samples[i]);
      continue;
    }
    const span = lengths[i] - lengths[i - 1];
    const u = (target - lengths[i - 1]) / span;
    const a = stroke.samples[i - 1];
    const b = stroke.samples[i];
    const cut = {
      x: a.x + u * (b.x - a.x),
      y: a.y + u * (b.y - a.y),
      pressure: a.pressure + u * (b.pressure - a.pressure),
    };
    const last = prefix[prefix.length - 1];
    if (cut.x !== last.x || cut.y !== last.y) prefix.push(cut);
    break;
  }
  return prefix;
}

// --- stroke log (engine-compatible plain text) -------------------------------

function hexPair(v: number): string {
  return Math.round(v * 255)
    .toString(16)
    .padStart(2, "0");
}

export function colorToHex(color: [number, number, number, number]): string {
  return "#" + color.map(hexPair).join("");
}

export function colorFromHex(text: string): [number, number, number, number] {
  if (!/^#[0-9a-fA-F]{8}$/.test(text)) throw new Error(`expected #rrggbbaa color, got ${text}`);
  const channel = (i: number) => parseInt(text.slice(i, i + 2), 16) / 255;
  return [channel(1), channel(3), channel(5), channel(7)];
}

export function formatStrokeLog(collection: StrokeCollection): string {
  const lines: string[] = [];
  collection.strokes.forEach((stroke, i) => {
    const sid = `s${i}`;
    lines.push(
      `stroke ${sid} ${stroke.startTime} ${stroke.finishTime} ` +
        `${colorToHex(stroke.color)} ${stroke.baseWidth}`,
    );
    for (const s of stroke.samples) {
      lines.push(`${sid} ${s.x} ${s.y} ${s.pressure}`);
    }
  });
  return lines.join("\n") + "\n";
}

export function parseStrokeLog(text: string): Stroke[] {
  const headers = new Map<string, Stroke>();
  const order: string[] = [];
  text.split("\n").forEach((raw, lineIndex) => {
    const line = raw.trim();
    if (!line || line.startsWith("#")) return;
    const fields = line.split(/\s+/);
    if (fields[0] === "stroke") {
      if (fields.length !== 6) throw new Error(`stroke log line ${lineIndex + 1}: bad header`);
      const [, sid, start, finish, color, width] = fields;
      headers.set(sid, {
        samples: [],
        startTime: parseFloat(start),
        finishTime: parseFloat(finish),
        color: colorFromHex(color),
        baseWidth: parseFloat(width),
      });
      order.push(sid);
    } else {
      if (fields.length !== 4) throw new Error(`stroke log line ${lineIndex + 1}: bad sample`);
      const [sid, x, y, pressure] = fields;
      const stroke = headers.get(sid);
      if (!stroke) throw new Error(`stroke log line ${lineIndex + 1}: undeclared stroke ${sid}`);
      stroke.samples.push({
        x: parseFloat(x),
        y: parseFloat(y),
        pressure: Math.min(1, Math.max(0, parseFloat(pressure))),
      });
    }
  });
  const strokes = order.map((sid) => headers.get(sid)!);
  for (const s of strokes) {
    if (s.samples.length === 0) throw new Error(`stroke log: stroke without samples`);
  }
  return strokes;
}

/** Collections keep strokes sorted by start time, like the engine's ingest. */
export function collectionFromLog(text: string, id: string): StrokeCollection {
  const strokes = parseStrokeLog(text).sort((a, b) => a.startTime - b.startTime);
  return { id, strokes };
}
