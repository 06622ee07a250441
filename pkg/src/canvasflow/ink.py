"""Digital ink: pressure-aware strokes, outline tessellation, timed replay.

A stroke is one pen-down-to-pen-up curve: ordered position+pressure
samples plus stroke-level start/finish times, color, and base width.
Per-sample timestamps are not stored; replay interpolates time linearly
across the polyline's arc length. Tessellation is deterministic so that
rendering the same ink twice produces byte-identical output.
"""

import math
import re
import warnings
from dataclasses import dataclass, field, replace
from typing import Literal

from .model import Rect

RGBA = tuple[float, float, float, float]

BLACK: RGBA = (0.0, 0.0, 0.0, 1.0)

# A full circle is tessellated with 16 segments; caps use half of one.
CIRCLE_SEGMENTS = 16
_CAP_STEPS = CIRCLE_SEGMENTS // 2


class InkCaptureWarning(UserWarning):
    """Raised (as a warning) when capture data is coerced, e.g. pressure clamping."""


@dataclass(frozen=True)
class InkSample:
    """One digitizer sample: 2D canvas position and pressure in [0, 1]."""

    position: tuple[float, float]
    pressure: float = 1.0

    def __post_init__(self):
        x, y = self.position
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"sample position must be finite, got {self.position}")
        if not math.isfinite(self.pressure):
            raise ValueError(f"sample pressure must be finite, got {self.pressure}")
        object.__setattr__(self, "position", (float(x), float(y)))
        object.__setattr__(self, "pressure", min(1.0, max(0.0, float(self.pressure))))


@dataclass
class Stroke:
    """One curve on the canvas with stroke-level timing and styling."""

    samples: list[InkSample]
    start_time: float = 0.0
    finish_time: float = 0.0
    color: RGBA = BLACK
    base_width: float = 1.0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.samples:
            raise ValueError("a stroke needs at least one sample")
        if self.base_width <= 0.0:
            raise ValueError(f"base_width must be positive, got {self.base_width}")
        if self.finish_time < self.start_time:
            raise ValueError(
                f"finish_time {self.finish_time} precedes start_time {self.start_time}"
            )

    @property
    def duration(self) -> float:
        return self.finish_time - self.start_time


@dataclass
class StrokeCollection:
    """Ordered group of strokes; kept sorted by start_time on ingest."""

    id: str
    strokes: list[Stroke] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.strokes = sorted(self.strokes, key=lambda s: s.start_time)


@dataclass(frozen=True)
class PenStyle:
    """Rendering style. Highlighters draw with flat caps and opacity < 1."""

    kind: Literal["pen", "highlighter"] = "pen"
    min_width_fraction: float = 0.1
    opacity: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.min_width_fraction <= 1.0:
            raise ValueError(
                f"min_width_fraction must be in (0, 1], got {self.min_width_fraction}"
            )
        if not 0.0 < self.opacity <= 1.0:
            raise ValueError(f"opacity must be in (0, 1], got {self.opacity}")


DEFAULT_PEN = PenStyle("pen", 0.1, 1.0)
DEFAULT_HIGHLIGHTER = PenStyle("highlighter", 1.0, 0.4)


def append_sample(stroke: Stroke, sample_or_position, pressure: float | None = None) -> Stroke:
    """Return a copy of the stroke with one sample appended.

    Accepts either an InkSample or a raw (position, pressure) pair as
    captured from a digitizer. Out-of-range pressure is clamped to [0, 1]
    with an InkCaptureWarning; non-finite positions are rejected.
    """
    if isinstance(sample_or_position, InkSample):
        sample = sample_or_position
    else:
        p = 1.0 if pressure is None else pressure
        if math.isfinite(p) and not 0.0 <= p <= 1.0:
            warnings.warn(
                f"pressure {p} clamped to [0, 1]", InkCaptureWarning, stacklevel=2
            )
        sample = InkSample(tuple(sample_or_position), p)
    return replace(stroke, samples=list(stroke.samples) + [sample])


def delete_stroke(collection: StrokeCollection, index: int) -> StrokeCollection:
    """Return a copy of the collection without the stroke at ``index``."""
    if not 0 <= index < len(collection.strokes):
        raise IndexError(f"stroke index {index} outside collection of {len(collection.strokes)}")
    strokes = list(collection.strokes)
    del strokes[index]
    return StrokeCollection(id=collection.id, strokes=strokes, extra=dict(collection.extra))


def _half_width(base_width: float, pen: PenStyle, pressure: float) -> float:
    f = pen.min_width_fraction
    return base_width / 2.0 * (f + (1.0 - f) * pressure)


def _dedupe(samples: list[InkSample]) -> list[InkSample]:
    out = [samples[0]]
    for s in samples[1:]:
        if s.position != out[-1].position:
            out.append(s)
    return out


def _disc(center: tuple[float, float], radius: float) -> list[tuple[float, float]]:
    step = 2.0 * math.pi / CIRCLE_SEGMENTS
    return [
        (center[0] + radius * math.cos(k * step), center[1] + radius * math.sin(k * step))
        for k in range(CIRCLE_SEGMENTS)
    ]


def _cap_arc(
    center: tuple[float, float], radius: float, from_angle: float
) -> list[tuple[float, float]]:
    """Clockwise half-circle from from_angle, excluding both endpoints."""
    step = math.pi / _CAP_STEPS
    return [
        (
            center[0] + radius * math.cos(from_angle - k * step),
            center[1] + radius * math.sin(from_angle - k * step),
        )
        for k in range(1, _CAP_STEPS)
    ]


def stroke_outline(stroke: Stroke, pen: PenStyle = DEFAULT_PEN) -> list[tuple[float, float]]:
    """Tessellate a stroke into a closed polygon (vertex list, canvas units).

    The polyline is offset on both sides by the local half-width
    base_width/2 * (f + (1-f) * pressure) with f = pen.min_width_fraction,
    using per-sample normals averaged between adjacent segments. Pens get
    round (half-circle) caps; highlighters get flat caps. A single-sample
    stroke becomes a regular 16-gon disc of that sample's local width.
    """
    pts = _dedupe(stroke.samples)
    if len(pts) == 1:
        return _disc(pts[0].position, _half_width(stroke.base_width, pen, pts[0].pressure))

    positions = [s.position for s in pts]
    n = len(positions)
    seg_dirs: list[tuple[float, float]] = []
    for i in range(n - 1):
        dx = positions[i + 1][0] - positions[i][0]
        dy = positions[i + 1][1] - positions[i][1]
        length = math.hypot(dx, dy)
        seg_dirs.append((dx / length, dy / length))

    directions: list[tuple[float, float]] = []
    for i in range(n):
        if i == 0:
            d = seg_dirs[0]
        elif i == n - 1:
            d = seg_dirs[-1]
        else:
            ax, ay = seg_dirs[i - 1]
            bx, by = seg_dirs[i]
            mx, my = ax + bx, ay + by
            norm = math.hypot(mx, my)
            # 180-degree reversal: fall back to the incoming segment
            d = seg_dirs[i - 1] if norm < 1e-12 else (mx / norm, my / norm)
        directions.append(d)

    widths = [_half_width(stroke.base_width, pen, s.pressure) for s in pts]
    left = []
    right = []
    for (px, py), (dx, dy), w in zip(positions, directions, widths):
        nx, ny = -dy, dx
        left.append((px + nx * w, py + ny * w))
        right.append((px - nx * w, py - ny * w))

    # Walk the left side forward, arc around the end, walk the right side
    # back, arc around the start. Normals sit at atan2(dx, -dy); the cap
    # arcs run clockwise so they bulge along (end) / against (start) the
    # stroke direction.
    outline = list(left)
    if pen.kind == "pen":
        end_normal_angle = math.atan2(directions[-1][0], -directions[-1][1])
        outline.extend(_cap_arc(positions[-1], widths[-1], end_normal_angle))
    outline.extend(reversed(right))
    if pen.kind == "pen":
        start_normal_angle = math.atan2(directions[0][0], -directions[0][1])
        outline.extend(_cap_arc(positions[0], widths[0], start_normal_angle + math.pi))
    return outline


def stroke_bbox(stroke: Stroke, pen: PenStyle = DEFAULT_PEN) -> Rect:
    """Tight axis-aligned bounds of the tessellated outline."""
    return Rect.bounding(stroke_outline(stroke, pen))


def _arc_lengths(samples: list[InkSample]) -> list[float]:
    out = [0.0]
    for a, b in zip(samples, samples[1:]):
        out.append(out[-1] + math.dist(a.position, b.position))
    return out


def replay_visible(
    collection: StrokeCollection, t: float, speed: float = 1.0
) -> list[tuple[int, float]]:
    """Which strokes are visible at presentation time t, and how much of each.

    With effective time tau = t * speed: finished strokes report fraction 1,
    strokes that have not started are omitted, and a stroke straddling tau
    reports (tau - start) / (finish - start). A stroke whose start equals
    tau is present with fraction 0; zero-duration strokes are fully visible
    from their start time on.
    """
    if speed <= 0.0:
        raise ValueError(f"replay speed must be positive, got {speed}")
    if t < 0.0:
        raise ValueError(f"replay time must be non-negative, got {t}")
    tau = t * speed
    visible: list[tuple[int, float]] = []
    for index, stroke in enumerate(collection.strokes):
        if stroke.start_time > tau:
            continue
        if stroke.finish_time <= tau:
            visible.append((index, 1.0))
        else:
            visible.append((index, (tau - stroke.start_time) / stroke.duration))
    return visible


def stroke_prefix(stroke: Stroke, fraction: float) -> list[InkSample]:
    """Samples spanning the given fraction of the stroke's total arc length.

    The cut point is interpolated (position and pressure). Strokes with no
    arc length (single sample, or all samples coincident) are indivisible
    and return fully for any positive fraction.
    """
    if fraction >= 1.0:
        return list(stroke.samples)
    if fraction <= 0.0:
        return []
    lengths = _arc_lengths(stroke.samples)
    total = lengths[-1]
    if total == 0.0:
        return list(stroke.samples)
    target = fraction * total
    prefix: list[InkSample] = [stroke.samples[0]]
    for i in range(1, len(stroke.samples)):
        if lengths[i] <= target:
            prefix.append(stroke.samples[i])
            continue
        span = lengths[i] - lengths[i - 1]
        u = (target - lengths[i - 1]) / span
        a, b = stroke.samples[i - 1], stroke.samples[i]
        cut = InkSample(
            (
                a.position[0] + u * (b.position[0] - a.position[0]),
                a.position[1] + u * (b.position[1] - a.position[1]),
            ),
            a.pressure + u * (b.pressure - a.pressure),
        )
        if cut.position != prefix[-1].position:
            prefix.append(cut)
        break
    return prefix


# --- plain-text stroke log -------------------------------------------------
#
# Header lines:  stroke <id> <start> <finish> <#rrggbbaa> <base_width>
# Sample lines:  <id> <x> <y> <pressure>
# Blank lines and lines starting with '#' are ignored.

_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{8}$")


def color_to_hex(color: RGBA) -> str:
    return "#" + "".join(f"{round(c * 255):02x}" for c in color)


def color_from_hex(text: str) -> RGBA:
    if not _HEX_COLOR.match(text):
        raise ValueError(f"expected #rrggbbaa color, got {text!r}")
    r, g, b, a = (int(text[i : i + 2], 16) / 255.0 for i in (1, 3, 5, 7))
    return (r, g, b, a)


def parse_stroke_log(text: str) -> list[Stroke]:
    """Parse a digitizer capture log into strokes (file order)."""
    headers: dict[str, tuple[float, float, RGBA, float]] = {}
    samples: dict[str, list[InkSample]] = {}
    order: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            if fields[0] == "stroke":
                _, sid, start, finish, color, width = fields
                headers[sid] = (
                    float(start),
                    float(finish),
                    color_from_hex(color),
                    float(width),
                )
                samples.setdefault(sid, [])
                order.append(sid)
            else:
                sid, x, y, pressure = fields
                if sid not in headers:
                    raise ValueError(f"sample for undeclared stroke {sid!r}")
                samples[sid].append(InkSample((float(x), float(y)), float(pressure)))
        except ValueError as exc:
            raise ValueError(f"stroke log line {lineno}: {exc}") from None
    strokes = []
    for sid in order:
        start, finish, color, width = headers[sid]
        if not samples[sid]:
            raise ValueError(f"stroke {sid!r} has no samples")
        strokes.append(
            Stroke(
                samples=samples[sid],
                start_time=start,
                finish_time=finish,
                color=color,
                base_width=width,
            )
        )
    return strokes


def format_stroke_log(collection: StrokeCollection) -> str:
    """Serialize a collection to the plain-text log format."""
    lines = []
    for i, stroke in enumerate(collection.strokes):
        sid = f"s{i}"
        lines.append(
            f"stroke {sid} {stroke.start_time!r} {stroke.finish_time!r} "
            f"{color_to_hex(stroke.color)} {stroke.base_width!r}"
        )
        for s in stroke.samples:
            lines.append(f"{sid} {s.position[0]!r} {s.position[1]!r} {s.pressure!r}")
    return "\n".join(lines) + "\n"


def import_stroke_log(text: str, collection_id: str) -> StrokeCollection:
    """Build a collection from a capture log; strokes are sorted by start time."""
    return StrokeCollection(id=collection_id, strokes=parse_stroke_log(text))
