"""Pure camera geometry: interpolation, canvas/screen mapping, framing.

All functions are stateless. Conventions:

* canvas coordinates are y-up, screen coordinates are y-down with the
  origin at the top-left pixel;
* zoom is screen pixels per canvas unit and interpolates geometrically
  (linear zoom makes deep zoom-ins visually accelerate);
* rotation interpolates along the shortest arc, counterclockwise on an
  exact half-turn tie.
"""

import math

from .errors import GeometryError
from .model import TAU, Keyframe, Rect, Viewport, normalize_angle


def smoothstep(t: float) -> float:
    return t * t * (3.0 - 2.0 * t)


_EASING_FUNCTIONS = {"linear": lambda t: t, "smoothstep": smoothstep}


def apply_easing(easing: str, t: float) -> float:
    try:
        return _EASING_FUNCTIONS[easing](t)
    except KeyError:
        raise ValueError(f"unknown easing {easing!r}") from None


def _require_valid(v: Viewport) -> None:
    if not v.is_valid():
        raise GeometryError(f"invalid viewport: {v}")


def shortest_arc(a: float, b: float) -> float:
    """Signed rotation from angle a to angle b, in (-pi, pi]."""
    delta = (b - a) % TAU
    if delta > math.pi:
        delta -= TAU
    return delta


def interpolate_viewport(a: Viewport, b: Viewport, t: float) -> Viewport:
    """Blend two viewports: linear center, geometric zoom, shortest-arc rotation.

    Endpoints are exact: t=0 returns a, t=1 returns b.
    """
    _require_valid(a)
    _require_valid(b)
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"interpolation parameter {t} outside [0, 1]")
    if t == 0.0:
        return a
    if t == 1.0:
        return b
    cx = a.center[0] * (1.0 - t) + b.center[0] * t
    cy = a.center[1] * (1.0 - t) + b.center[1] * t
    zoom = math.exp((1.0 - t) * math.log(a.zoom) + t * math.log(b.zoom))
    rotation = normalize_angle(a.rotation + t * shortest_arc(a.rotation, b.rotation))
    return Viewport(center=(cx, cy), zoom=zoom, rotation=rotation)


def canvas_to_screen(
    p: tuple[float, float], v: Viewport, screen: tuple[int, int]
) -> tuple[float, float]:
    """Project a canvas point to screen pixels.

    The point is translated by -center, rotated by -rotation, scaled by
    zoom, y-flipped, then offset to the screen center.
    """
    _require_valid(v)
    w, h = screen
    if w <= 0 or h <= 0:
        raise GeometryError(f"screen dimensions must be positive, got {screen}")
    dx = p[0] - v.center[0]
    dy = p[1] - v.center[1]
    cos_r = math.cos(v.rotation)
    sin_r = math.sin(v.rotation)
    # rotate by -rotation
    rx = cos_r * dx + sin_r * dy
    ry = -sin_r * dx + cos_r * dy
    return (w / 2.0 + v.zoom * rx, h / 2.0 - v.zoom * ry)


def screen_to_canvas(
    p: tuple[float, float], v: Viewport, screen: tuple[int, int]
) -> tuple[float, float]:
    """Exact inverse of canvas_to_screen."""
    _require_valid(v)
    w, h = screen
    if w <= 0 or h <= 0:
        raise GeometryError(f"screen dimensions must be positive, got {screen}")
    rx = (p[0] - w / 2.0) / v.zoom
    ry = (h / 2.0 - p[1]) / v.zoom
    cos_r = math.cos(v.rotation)
    sin_r = math.sin(v.rotation)
    # rotate by +rotation
    dx = cos_r * rx - sin_r * ry
    dy = sin_r * rx + cos_r * ry
    return (v.center[0] + dx, v.center[1] + dy)


def frame_bounds(bbox: Rect, screen: tuple[int, int], margin_fraction: float = 0.0) -> Viewport:
    """Viewport that centers bbox and fits it on screen with a margin.

    zoom = min(screen_w / (w * (1 + margin)), screen_h / (h * (1 + margin))),
    so the projected rectangle never spills off screen.
    """
    if not 0.0 <= margin_fraction < 0.5:
        raise ValueError(f"margin_fraction {margin_fraction} outside [0, 0.5)")
    if bbox.width <= 0.0 or bbox.height <= 0.0:
        raise GeometryError(f"cannot frame zero-area rectangle {bbox}")
    w, h = screen
    if w <= 0 or h <= 0:
        raise GeometryError(f"screen dimensions must be positive, got {screen}")
    pad = 1.0 + margin_fraction
    zoom = min(w / (bbox.width * pad), h / (bbox.height * pad))
    return Viewport(center=bbox.center, zoom=zoom, rotation=0.0)


def sample_transition(a: Keyframe, b: Keyframe, fps: float) -> list[Viewport]:
    """Expand the a -> b transition into per-frame viewports.

    Emits ceil(b.transition_duration * fps) interpolated frames (the first
    strictly past t=0, the last exactly b.viewport), then
    ceil(b.dwell_duration * fps) copies of b.viewport.
    """
    if fps <= 0.0:
        raise ValueError(f"fps must be positive, got {fps}")
    frames: list[Viewport] = []
    n_transition = math.ceil(b.transition_duration * fps)
    for i in range(1, n_transition + 1):
        t = apply_easing(b.easing, i / n_transition)
        frames.append(interpolate_viewport(a.viewport, b.viewport, t))
    n_dwell = math.ceil(b.dwell_duration * fps)
    frames.extend([b.viewport] * n_dwell)
    return frames


def frame_count(keyframe: Keyframe, fps: float) -> int:
    """Number of frames sample_transition will emit for this keyframe."""
    return math.ceil(keyframe.transition_duration * fps) + math.ceil(
        keyframe.dwell_duration * fps
    )
