"""Document model: canvas contents, slide frames, and the presentation flow.

The document lives on one infinite vector canvas (y axis pointing up).
Slides are rectangular frames placed on that canvas, so a linear slide
step is just a camera framing of its rectangle. A flow interleaves
nonlinear camera keyframes with linear slide steps.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Literal

ElementKind = Literal[
    "vector-shape",
    "image-asset",
    "text",
    "latex-asset",
    "video-placeholder",
    "pdf-page-asset",
    "ink-ref",
]
ELEMENT_KINDS: tuple[str, ...] = (
    "vector-shape",
    "image-asset",
    "text",
    "latex-asset",
    "video-placeholder",
    "pdf-page-asset",
    "ink-ref",
)

Easing = Literal["linear", "smoothstep"]
EASINGS: tuple[str, ...] = ("linear", "smoothstep")

# Element kinds whose payload references a file on disk (key -> payload field).
ASSET_PAYLOAD_KEYS = {
    "image-asset": "path",
    "latex-asset": "path",
    "pdf-page-asset": "path",
    "video-placeholder": "poster",
}

TAU = 2.0 * math.pi

DEFAULT_SLIDE_ASPECT = 16.0 / 9.0
DEFAULT_TRANSITION_SECONDS = 1.0


def normalize_angle(radians: float) -> float:
    """Map an angle to [0, tau). Tiny negative inputs can round to tau itself."""
    r = radians % TAU
    return 0.0 if r >= TAU else r


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in canvas units, anchored at its lower-left corner."""

    x: float
    y: float
    width: float
    height: float

    @property
    def center(self) -> tuple[float, float]:
        return (self.x + self.width / 2.0, self.y + self.height / 2.0)

    @property
    def corners(self) -> tuple[tuple[float, float], ...]:
        return (
            (self.x, self.y),
            (self.x + self.width, self.y),
            (self.x + self.width, self.y + self.height),
            (self.x, self.y + self.height),
        )

    def union(self, other: "Rect") -> "Rect":
        x0 = min(self.x, other.x)
        y0 = min(self.y, other.y)
        x1 = max(self.x + self.width, other.x + other.width)
        y1 = max(self.y + self.height, other.y + other.height)
        return Rect(x0, y0, x1 - x0, y1 - y0)

    @staticmethod
    def bounding(points) -> "Rect":
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        return Rect(min(xs), min(ys), max(xs) - min(xs), max(ys) - min(ys))


@dataclass(frozen=True)
class Viewport:
    """Camera state: canvas point at screen center, zoom in px per canvas
    unit, and counterclockwise rotation normalized to [0, tau)."""

    center: tuple[float, float] = (0.0, 0.0)
    zoom: float = 1.0
    rotation: float = 0.0
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))
        object.__setattr__(self, "rotation", normalize_angle(float(self.rotation)))
        object.__setattr__(self, "zoom", float(self.zoom))

    def is_valid(self) -> bool:
        return (
            math.isfinite(self.center[0])
            and math.isfinite(self.center[1])
            and math.isfinite(self.zoom)
            and self.zoom > 0.0
            and math.isfinite(self.rotation)
        )


@dataclass(frozen=True)
class Keyframe:
    """A viewport target plus how to get there and how long to stay."""

    viewport: Viewport
    transition_duration: float = DEFAULT_TRANSITION_SECONDS
    dwell_duration: float = 0.0
    easing: str = "smoothstep"
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass
class CanvasElement:
    """One visual item on the canvas. ``payload`` is kind-specific:
    shape geometry, asset path, text content, or a stroke-collection id."""

    id: str
    kind: str
    position: tuple[float, float] = (0.0, 0.0)
    scale: float = 1.0
    rotation: float = 0.0
    z_order: int = 0
    payload: dict[str, Any] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass
class Slide:
    """A fixed-aspect rectangular frame on the canvas."""

    id: str
    frame: Rect
    element_ids: list[str] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class NonlinearStep:
    """Flow step that animates the camera to a keyframe."""

    keyframe: Keyframe
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class LinearStep:
    """Flow step that frames a slide rectangle."""

    slide_id: str
    extra: dict[str, Any] = field(default_factory=dict)


FlowStep = NonlinearStep | LinearStep


@dataclass
class ProjectMetadata:
    title: str = ""
    author: str = ""
    background: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass
class Project:
    """A whole presentation document. ``ink`` holds StrokeCollection objects
    (see canvasflow.ink); elements of kind ink-ref point at them by id."""

    elements: list[CanvasElement] = field(default_factory=list)
    slides: list[Slide] = field(default_factory=list)
    flow: list[FlowStep] = field(default_factory=list)
    ink: list = field(default_factory=list)
    metadata: ProjectMetadata = field(default_factory=ProjectMetadata)
    slide_aspect: float = DEFAULT_SLIDE_ASPECT
    extra: dict[str, Any] = field(default_factory=dict)

    def element_by_id(self, element_id: str):
        for el in self.elements:
            if el.id == element_id:
                return el
        return None

    def slide_by_id(self, slide_id: str):
        for slide in self.slides:
            if slide.id == slide_id:
                return slide
        return None

    def ink_by_id(self, collection_id: str):
        for coll in self.ink:
            if coll.id == collection_id:
                return coll
        return None


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding. ``subject`` is the offending object's id."""

    severity: Literal["error", "warning"]
    code: str
    message: str
    subject: str = ""

    def __str__(self) -> str:
        where = f" [{self.subject}]" if self.subject else ""
        return f"{self.severity}: {self.code}: {self.message}{where}"
