"""Document operations: validation, flow navigation, slide framing."""

import math
from typing import NamedTuple

from . import camera
from .model import (
    EASINGS,
    ELEMENT_KINDS,
    CanvasElement,
    Diagnostic,
    LinearStep,
    NonlinearStep,
    Project,
    Slide,
    Viewport,
)

_SHAPES = ("rect", "ellipse", "polygon", "path")


def _err(code: str, message: str, subject: str = "") -> Diagnostic:
    return Diagnostic("error", code, message, subject)


def _warn(code: str, message: str, subject: str = "") -> Diagnostic:
    return Diagnostic("warning", code, message, subject)


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


def _check_element(el: CanvasElement, project: Project, out: list[Diagnostic]) -> None:
    if el.kind not in ELEMENT_KINDS:
        out.append(_err("unknown-kind", f"element kind {el.kind!r} not recognized", el.id))
        return
    if not _finite(el.position[0], el.position[1], el.rotation):
        out.append(_err("non-finite", "element position/rotation must be finite", el.id))
    if not (_finite(el.scale) and el.scale > 0):
        out.append(_err("bad-scale", f"element scale must be positive, got {el.scale}", el.id))
    if el.kind == "ink-ref":
        ref = el.payload.get("collection")
        if not ref or project.ink_by_id(ref) is None:
            out.append(_err("dangling-ink", f"ink-ref points at missing collection {ref!r}", el.id))
    elif el.kind == "vector-shape":
        if el.payload.get("shape") not in _SHAPES:
            out.append(
                _err("bad-shape", f"vector-shape payload shape must be one of {_SHAPES}", el.id)
            )
    elif el.kind == "text":
        if not isinstance(el.payload.get("text"), str):
            out.append(_err("bad-text", "text payload needs a 'text' string", el.id))
    elif el.kind in ("image-asset", "latex-asset", "pdf-page-asset"):
        if not isinstance(el.payload.get("path"), str):
            out.append(_err("bad-asset", f"{el.kind} payload needs a 'path' string", el.id))


def _check_slide(slide: Slide, project: Project, known: set[str], out: list[Diagnostic]) -> None:
    f = slide.frame
    if not _finite(f.x, f.y, f.width, f.height) or f.width <= 0 or f.height <= 0:
        out.append(_err("bad-frame", f"slide frame must have positive extent, got {f}", slide.id))
    elif project.slide_aspect > 0:
        aspect = f.width / f.height
        if abs(aspect - project.slide_aspect) > 1e-6 * project.slide_aspect:
            out.append(
                _warn(
                    "aspect-mismatch",
                    f"slide aspect {aspect:.4f} differs from project aspect "
                    f"{project.slide_aspect:.4f}",
                    slide.id,
                )
            )
    for eid in slide.element_ids:
        if eid not in known:
            out.append(_err("dangling-element", f"slide lists missing element {eid!r}", slide.id))


def _check_ink(project: Project, out: list[Diagnostic]) -> None:
    seen: set[str] = set()
    for coll in project.ink:
        if coll.id in seen:
            out.append(_err("duplicate-id", f"duplicate ink collection id {coll.id!r}", coll.id))
        seen.add(coll.id)
        previous_start = -math.inf
        for i, stroke in enumerate(coll.strokes):
            subject = f"{coll.id}[{i}]"
            if stroke.start_time < 0 or not _finite(stroke.start_time, stroke.finish_time):
                out.append(_err("bad-timing", "stroke times must be finite and >= 0", subject))
            if stroke.start_time < previous_start:
                out.append(_err("unsorted-strokes", "strokes not sorted by start_time", subject))
            previous_start = stroke.start_time
            if any(not 0.0 <= c <= 1.0 for c in stroke.color):
                out.append(_err("bad-color", "stroke color channels must be in [0, 1]", subject))


def validate_project(project: Project) -> list[Diagnostic]:
    """Check every invariant and cross-reference; pure, returns diagnostics.

    An empty list means the project is well formed. Errors break
    rendering; warnings do not.
    """
    out: list[Diagnostic] = []

    element_ids: set[str] = set()
    for el in project.elements:
        if el.id in element_ids:
            out.append(_err("duplicate-id", f"duplicate element id {el.id!r}", el.id))
        element_ids.add(el.id)
        _check_element(el, project, out)

    slide_ids: set[str] = set()
    for slide in project.slides:
        if slide.id in slide_ids:
            out.append(_err("duplicate-id", f"duplicate slide id {slide.id!r}", slide.id))
        slide_ids.add(slide.id)
        _check_slide(slide, project, element_ids, out)

    _check_ink(project, out)

    for i, step in enumerate(project.flow):
        subject = f"flow[{i}]"
        if isinstance(step, LinearStep):
            if step.slide_id not in slide_ids:
                out.append(
                    _err("dangling-slide", f"flow references missing slide {step.slide_id!r}", subject)
                )
        elif isinstance(step, NonlinearStep):
            kf = step.keyframe
            if not kf.viewport.is_valid():
                out.append(_err("bad-viewport", f"keyframe viewport invalid: {kf.viewport}", subject))
            if not _finite(kf.transition_duration, kf.dwell_duration) or min(
                kf.transition_duration, kf.dwell_duration
            ) < 0:
                out.append(_err("bad-duration", "keyframe durations must be finite and >= 0", subject))
            if kf.easing not in EASINGS:
                out.append(_err("bad-easing", f"unknown easing {kf.easing!r}", subject))
        else:
            out.append(_err("bad-step", f"unrecognized flow step {step!r}", subject))

    if not project.flow:
        out.append(_warn("empty-flow", "project has no flow steps; nothing to present"))

    return out


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity == "error" for d in diagnostics)


class FlowMove(NamedTuple):
    """Result of a navigation step; moved=False signals the flow boundary."""

    cursor: int
    moved: bool


def flow_advance(project: Project, cursor: int) -> FlowMove:
    """Advance to the next flow step, or stay put at the end of the flow."""
    if not 0 <= cursor < len(project.flow):
        raise IndexError(f"cursor {cursor} outside flow of length {len(project.flow)}")
    if cursor + 1 < len(project.flow):
        return FlowMove(cursor + 1, True)
    return FlowMove(cursor, False)


def flow_back(project: Project, cursor: int) -> FlowMove:
    """Step back to the previous flow step, or stay put at the start."""
    if not 0 <= cursor < len(project.flow):
        raise IndexError(f"cursor {cursor} outside flow of length {len(project.flow)}")
    if cursor > 0:
        return FlowMove(cursor - 1, True)
    return FlowMove(cursor, False)


def slide_viewport(slide: Slide, screen: tuple[int, int], margin_fraction: float = 0.05) -> Viewport:
    """Viewport that frames a slide's rectangle on the given screen."""
    return camera.frame_bounds(slide.frame, screen, margin_fraction)
