"""Deterministic frame rendering: flow -> SVG sequence or replay manifest.

Frames are pure functions of the project, so re-rendering identical input
produces byte-identical files: floats print with their shortest
round-trip repr, keys are sorted, and nothing derives from the clock.
The presentation clock for ink replay restarts at each flow step.
"""

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from . import camera, document, ink
from .errors import ValidationFailure
from .model import (
    DEFAULT_TRANSITION_SECONDS,
    Keyframe,
    LinearStep,
    NonlinearStep,
    Project,
    Viewport,
)

RENDER_FORMATS = ("svg-sequence", "replay-manifest")

# Margin used when a linear flow step frames its slide.
SLIDE_MARGIN = 0.05


@dataclass(frozen=True)
class RenderSpec:
    out_dir: Path
    fps: float = 30.0
    format: str = "svg-sequence"
    screen: tuple[int, int] = (1280, 720)

    def __post_init__(self):
        if self.fps <= 0:
            raise ValueError(f"fps must be positive, got {self.fps}")
        if self.screen[0] <= 0 or self.screen[1] <= 0:
            raise ValueError(f"screen dimensions must be positive, got {self.screen}")
        if self.format not in RENDER_FORMATS:
            raise ValueError(f"format must be one of {RENDER_FORMATS}, got {self.format!r}")
        object.__setattr__(self, "out_dir", Path(self.out_dir))


def _f(value: float) -> str:
    """Shortest round-trip decimal; -0.0 normalized so output is stable."""
    return repr(float(value) + 0.0)


def _color_attr(color) -> tuple[str, float]:
    """RGBA tuple -> (#rrggbb, alpha). Strings pass through opaque."""
    if isinstance(color, str):
        return color, 1.0
    r, g, b, a = color
    return "#" + "".join(f"{round(c * 255):02x}" for c in (r, g, b)), a


def step_keyframes(project: Project, screen: tuple[int, int]) -> list[Keyframe]:
    """Target keyframe per flow step; linear steps frame their slide."""
    targets = []
    for step in project.flow:
        if isinstance(step, NonlinearStep):
            targets.append(step.keyframe)
        else:
            slide = project.slide_by_id(step.slide_id)
            viewport = document.slide_viewport(slide, screen, SLIDE_MARGIN)
            targets.append(
                Keyframe(
                    viewport,
                    transition_duration=DEFAULT_TRANSITION_SECONDS,
                    dwell_duration=0.0,
                    easing="smoothstep",
                )
            )
    return targets


def viewport_matrix(v: Viewport, screen: tuple[int, int]) -> tuple[float, ...]:
    """Canvas -> screen affine as an SVG matrix(a b c d e f)."""
    w, h = screen
    cos_r = math.cos(v.rotation)
    sin_r = math.sin(v.rotation)
    a = v.zoom * cos_r
    b = v.zoom * sin_r
    c = v.zoom * sin_r
    d = -v.zoom * cos_r
    e = w / 2.0 - (a * v.center[0] + c * v.center[1])
    f = h / 2.0 - (b * v.center[0] + d * v.center[1])
    return (a, b, c, d, e, f)


def _polygon_points(points) -> str:
    return " ".join(f"{_f(x)},{_f(y)}" for x, y in points)


def _shape_svg(el) -> str:
    p = el.payload
    fill, fill_a = _color_attr(p.get("fill", "none")) if p.get("fill") else ("none", 1.0)
    stroke, stroke_a = _color_attr(p.get("stroke", "none")) if p.get("stroke") else ("none", 1.0)
    style = f' fill={quoteattr(fill)} stroke={quoteattr(stroke)}'
    if fill_a < 1.0:
        style += f' fill-opacity="{_f(fill_a)}"'
    if stroke_a < 1.0:
        style += f' stroke-opacity="{_f(stroke_a)}"'
    if p.get("stroke"):
        style += f' stroke-width="{_f(p.get("stroke_width", 1.0))}"'
    shape = p.get("shape")
    if shape == "rect":
        w, h = float(p.get("w", 1.0)), float(p.get("h", 1.0))
        return f'<rect x="{_f(-w / 2)}" y="{_f(-h / 2)}" width="{_f(w)}" height="{_f(h)}"{style}/>'
    if shape == "ellipse":
        return f'<ellipse cx="0" cy="0" rx="{_f(p.get("rx", 1.0))}" ry="{_f(p.get("ry", 1.0))}"{style}/>'
    if shape == "polygon":
        return f'<polygon points="{_polygon_points(p.get("points", []))}"{style}/>'
    if shape == "path":
        return f'<path d={quoteattr(p.get("d", ""))}{style}/>'
    return ""


def _text_svg(el) -> str:
    p = el.payload
    fill, _ = _color_attr(p.get("color", "#000000"))
    size = float(p.get("size", 1.0))
    # scale(1,-1) undoes the camera's y-flip so glyphs read upright
    return (
        f'<text x="0" y="0" transform="scale(1,-1)" font-size="{_f(size)}" '
        f'fill={quoteattr(fill)} text-anchor="middle" dominant-baseline="central" '
        f'font-family="sans-serif">{escape(str(p.get("text", "")))}</text>'
    )


def _image_svg(el) -> str:
    p = el.payload
    w, h = float(p.get("width", 1.0)), float(p.get("height", 1.0))
    return (
        f'<image transform="scale(1,-1)" x="{_f(-w / 2)}" y="{_f(-h / 2)}" '
        f'width="{_f(w)}" height="{_f(h)}" href={quoteattr(str(p.get("path", "")))}/>'
    )


def _video_placeholder_svg(el) -> str:
    p = el.payload
    w, h = float(p.get("width", 16.0)), float(p.get("height", 9.0))
    parts = [
        f'<rect x="{_f(-w / 2)}" y="{_f(-h / 2)}" width="{_f(w)}" height="{_f(h)}" '
        f'fill="#202020" stroke="#808080" stroke-width="{_f(min(w, h) * 0.02)}"/>'
    ]
    if p.get("poster"):
        parts.append(
            f'<image transform="scale(1,-1)" x="{_f(-w / 2)}" y="{_f(-h / 2)}" '
            f'width="{_f(w)}" height="{_f(h)}" href={quoteattr(str(p["poster"]))}/>'
        )
    r = min(w, h) * 0.25
    triangle = [(-r * 0.5, r * 0.75), (-r * 0.5, -r * 0.75), (r, 0.0)]
    parts.append(f'<polygon points="{_polygon_points(triangle)}" fill="#f0f0f0"/>')
    return "".join(parts)


def _ink_svg(el, project: Project, time_in_step: float) -> str:
    collection = project.ink_by_id(el.payload.get("collection"))
    pen_conf = el.payload.get("pen", {})
    pen = ink.PenStyle(
        kind=pen_conf.get("kind", "pen"),
        min_width_fraction=float(pen_conf.get("min_width_fraction", ink.DEFAULT_PEN.min_width_fraction)),
        opacity=float(pen_conf.get("opacity", ink.DEFAULT_PEN.opacity)),
    )
    parts = []
    for index, fraction in ink.replay_visible(collection, time_in_step, speed=1.0):
        stroke = collection.strokes[index]
        samples = stroke.samples if fraction >= 1.0 else ink.stroke_prefix(stroke, fraction)
        if not samples:
            continue
        outline = ink.stroke_outline(replace(stroke, samples=samples), pen)
        fill, alpha = _color_attr(stroke.color)
        opacity = alpha * pen.opacity
        attr = f' fill-opacity="{_f(opacity)}"' if opacity < 1.0 else ""
        parts.append(f'<polygon points="{_polygon_points(outline)}" fill={quoteattr(fill)}{attr}/>')
    return "".join(parts)


def render_svg(project: Project, viewport: Viewport, screen: tuple[int, int], time_in_step: float) -> str:
    """One frame: every element under the camera transform, ink replayed
    to the step-local time."""
    w, h = screen
    bg, _ = _color_attr(project.metadata.background)
    m = viewport_matrix(viewport, screen)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill={quoteattr(bg)}/>',
        f'<g transform="matrix({" ".join(_f(x) for x in m)})">',
    ]
    ordered = sorted(enumerate(project.elements), key=lambda pair: (pair[1].z_order, pair[0]))
    for _, el in ordered:
        if el.kind == "vector-shape":
            body = _shape_svg(el)
        elif el.kind == "text":
            body = _text_svg(el)
        elif el.kind in ("image-asset", "latex-asset", "pdf-page-asset"):
            body = _image_svg(el)
        elif el.kind == "video-placeholder":
            body = _video_placeholder_svg(el)
        elif el.kind == "ink-ref":
            body = _ink_svg(el, project, time_in_step)
        else:
            body = ""
        if not body:
            continue
        transform = (
            f"translate({_f(el.position[0])} {_f(el.position[1])}) "
            f"rotate({_f(math.degrees(el.rotation))}) scale({_f(el.scale)})"
        )
        lines.append(f'<g transform="{transform}">{body}</g>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def walk_flow(project: Project, screen: tuple[int, int], fps: float):
    """Yield (step_index, time_in_step, viewport) for every output frame."""
    targets = step_keyframes(project, screen)
    if not targets:
        return
    previous = targets[0]
    for step_index, target in enumerate(targets):
        frames = camera.sample_transition(previous, target, fps)
        for j, viewport in enumerate(frames, start=1):
            yield step_index, j / fps, viewport
        previous = target


def expected_frame_count(project: Project, screen: tuple[int, int], fps: float) -> int:
    return sum(camera.frame_count(kf, fps) for kf in step_keyframes(project, screen))


def render_frames(project: Project, spec: RenderSpec) -> list[Path]:
    """Render the whole flow; returns the files written.

    svg-sequence: one frame_%06d.svg per frame. replay-manifest: a single
    JSON with per-frame viewports and ink reveal states.
    """
    diagnostics = document.validate_project(project)
    if document.has_errors(diagnostics):
        raise ValidationFailure([d for d in diagnostics if d.severity == "error"])
    spec.out_dir.mkdir(parents=True, exist_ok=True)

    if spec.format == "svg-sequence":
        written = []
        for frame_index, (step, t, viewport) in enumerate(walk_flow(project, spec.screen, spec.fps)):
            path = spec.out_dir / f"frame_{frame_index:06d}.svg"
            path.write_text(render_svg(project, viewport, spec.screen, t), encoding="utf-8")
            written.append(path)
        return written

    frames = []
    for step, t, viewport in walk_flow(project, spec.screen, spec.fps):
        reveal = {
            coll.id: [[i, frac] for i, frac in ink.replay_visible(coll, t, speed=1.0)]
            for coll in project.ink
        }
        frames.append(
            {
                "step": step,
                "time": t,
                "viewport": {
                    "center": list(viewport.center),
                    "zoom": viewport.zoom,
                    "rotation": viewport.rotation,
                },
                "ink": reveal,
            }
        )
    manifest = {
        "format": 1,
        "fps": spec.fps,
        "screen": list(spec.screen),
        "frames": frames,
    }
    path = spec.out_dir / "replay_manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return [path]


# --- shared debug vectors ----------------------------------------------------
#
# The browser player re-implements viewport interpolation and ink reveal;
# these vectors pin both implementations to the same numbers.

_DEBUG_TS = (0.0, 0.25, 0.5, 0.75, 1.0)

_SYNTHETIC_PAIRS = (
    (Viewport((0.0, 0.0), 1.0, 0.0), Viewport((10.0, 0.0), 4.0, 0.0)),
    (Viewport((-5.0, 3.0), 2.0, math.radians(350.0)), Viewport((7.0, -2.0), 0.5, math.radians(10.0))),
    (Viewport((100.0, -40.0), 0.05, 1.0), Viewport((-30.0, 8.0), 50.0, 4.5)),
)


def _viewport_json(v: Viewport) -> dict:
    return {"center": list(v.center), "zoom": v.zoom, "rotation": v.rotation}


def emit_debug_states(project: Project, screen: tuple[int, int], fps: float) -> dict:
    """Contract vectors for the player: step viewports, interpolation
    samples (flow pairs plus synthetic stress pairs), and ink reveals."""
    targets = step_keyframes(project, screen)
    pairs = list(_SYNTHETIC_PAIRS)
    for a, b in zip(targets, targets[1:]):
        pairs.append((a.viewport, b.viewport))

    interpolation = []
    for a, b in pairs:
        for t in _DEBUG_TS:
            interpolation.append(
                {
                    "a": _viewport_json(a),
                    "b": _viewport_json(b),
                    "t": t,
                    "result": _viewport_json(camera.interpolate_viewport(a, b, t)),
                }
            )

    ink_reveal = []
    for coll in project.ink:
        horizon = max((s.finish_time for s in coll.strokes), default=0.0) * 1.1 + 0.1
        for speed in (1.0, 2.0):
            samples = []
            for k in range(20):
                t = k * horizon / (19 * speed)
                samples.append(
                    {
                        "t": t,
                        "visible": [[i, frac] for i, frac in ink.replay_visible(coll, t, speed)],
                    }
                )
            ink_reveal.append({"collection": coll.id, "speed": speed, "samples": samples})

    return {
        "format": 1,
        "screen": list(screen),
        "fps": fps,
        "slide_margin": SLIDE_MARGIN,
        "step_viewports": [_viewport_json(kf.viewport) for kf in targets],
        "step_durations": [
            {"transition": kf.transition_duration, "dwell": kf.dwell_duration, "easing": kf.easing}
            for kf in targets
        ],
        "frame_count": expected_frame_count(project, screen, fps),
        "interpolation": interpolation,
        "ink_reveal": ink_reveal,
    }
