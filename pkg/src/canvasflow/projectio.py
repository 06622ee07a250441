"""Project persistence: schema v1 JSON, round-trip safe.

Unknown fields survive load/save round-trips (they are carried in each
object's ``extra`` dict), output is deterministic (sorted keys, shortest
round-trip float repr, no timestamps), and asset references stay relative
to the project file.
"""

import json
from pathlib import Path
from typing import Any

from . import document
from .errors import ProjectFormatError, ValidationFailure
from .ink import InkSample, Stroke, StrokeCollection
from .model import (
    CanvasElement,
    Keyframe,
    LinearStep,
    NonlinearStep,
    Project,
    ProjectMetadata,
    Rect,
    Slide,
    Viewport,
)

FORMAT_VERSION = 1


def _take(data: dict, known: tuple[str, ...]) -> dict[str, Any]:
    """Split off unknown keys so they can round-trip via ``extra``."""
    return {k: v for k, v in data.items() if k not in known}


def _pair(value, where: str) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ProjectFormatError(f"expected [x, y] pair, got {value!r}", where)
    return (float(value[0]), float(value[1]))


def _rgba(value, where: str) -> tuple[float, float, float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 4:
        raise ProjectFormatError(f"expected [r, g, b, a] color, got {value!r}", where)
    return tuple(float(c) for c in value)


def _viewport_from(data: dict, where: str) -> Viewport:
    try:
        return Viewport(
            center=_pair(data.get("center", (0.0, 0.0)), f"{where}.center"),
            zoom=float(data.get("zoom", 1.0)),
            rotation=float(data.get("rotation", 0.0)),
            extra=_take(data, ("center", "zoom", "rotation")),
        )
    except (TypeError, ValueError) as exc:
        raise ProjectFormatError(str(exc), where) from None


def _keyframe_from(data: dict, where: str) -> Keyframe:
    try:
        return Keyframe(
            viewport=_viewport_from(data.get("viewport", {}), f"{where}.viewport"),
            transition_duration=float(data.get("transition_duration", 1.0)),
            dwell_duration=float(data.get("dwell_duration", 0.0)),
            easing=str(data.get("easing", "smoothstep")),
            extra=_take(data, ("viewport", "transition_duration", "dwell_duration", "easing")),
        )
    except (TypeError, ValueError) as exc:
        raise ProjectFormatError(str(exc), where) from None


def _element_from(data: dict, where: str) -> CanvasElement:
    try:
        return CanvasElement(
            id=str(data["id"]),
            kind=str(data["kind"]),
            position=_pair(data.get("position", (0.0, 0.0)), f"{where}.position"),
            scale=float(data.get("scale", 1.0)),
            rotation=float(data.get("rotation", 0.0)),
            z_order=int(data.get("z_order", 0)),
            payload=dict(data.get("payload", {})),
            extra=_take(data, ("id", "kind", "position", "scale", "rotation", "z_order", "payload")),
        )
    except KeyError as exc:
        raise ProjectFormatError(f"missing field {exc.args[0]!r}", where) from None
    except (TypeError, ValueError) as exc:
        raise ProjectFormatError(str(exc), where) from None


def _slide_from(data: dict, where: str) -> Slide:
    try:
        frame = data["frame"]
        if not isinstance(frame, (list, tuple)) or len(frame) != 4:
            raise ProjectFormatError(f"expected [x, y, w, h] frame, got {frame!r}", f"{where}.frame")
        return Slide(
            id=str(data["id"]),
            frame=Rect(*(float(v) for v in frame)),
            element_ids=[str(e) for e in data.get("element_ids", [])],
            extra=_take(data, ("id", "frame", "element_ids")),
        )
    except KeyError as exc:
        raise ProjectFormatError(f"missing field {exc.args[0]!r}", where) from None
    except (TypeError, ValueError) as exc:
        raise ProjectFormatError(str(exc), where) from None


def _step_from(data: dict, where: str):
    kind = data.get("type")
    if kind == "linear":
        if "slide_id" not in data:
            raise ProjectFormatError("linear step needs slide_id", where)
        return LinearStep(slide_id=str(data["slide_id"]), extra=_take(data, ("type", "slide_id")))
    if kind == "nonlinear":
        return NonlinearStep(
            keyframe=_keyframe_from(data.get("keyframe", {}), f"{where}.keyframe"),
            extra=_take(data, ("type", "keyframe")),
        )
    raise ProjectFormatError(f"flow step type must be linear or nonlinear, got {kind!r}", where)


def _stroke_from(data: dict, where: str) -> Stroke:
    try:
        samples = [
            InkSample((float(s[0]), float(s[1])), float(s[2]))
            for s in data.get("samples", [])
        ]
        return Stroke(
            samples=samples,
            start_time=float(data.get("start_time", 0.0)),
            finish_time=float(data.get("finish_time", 0.0)),
            color=_rgba(data.get("color", (0, 0, 0, 1)), f"{where}.color"),
            base_width=float(data.get("base_width", 1.0)),
            extra=_take(data, ("samples", "start_time", "finish_time", "color", "base_width")),
        )
    except (TypeError, ValueError, IndexError) as exc:
        raise ProjectFormatError(str(exc), where) from None


def _collection_from(data: dict, where: str) -> StrokeCollection:
    try:
        return StrokeCollection(
            id=str(data["id"]),
            strokes=[
                _stroke_from(s, f"{where}.strokes[{i}]")
                for i, s in enumerate(data.get("strokes", []))
            ],
            extra=_take(data, ("id", "strokes")),
        )
    except KeyError as exc:
        raise ProjectFormatError(f"missing field {exc.args[0]!r}", where) from None


def _section(data: dict, key: str) -> list:
    value = data.get(key, [])
    if not isinstance(value, list):
        raise ProjectFormatError(f"{key} must be a list, got {type(value).__name__}", key)
    return value


def project_from_dict(data: dict) -> Project:
    """Decode a schema-v1 dict; raises ProjectFormatError with a field path."""
    if not isinstance(data, dict):
        raise ProjectFormatError(f"project root must be an object, got {type(data).__name__}")
    version = data.get("format")
    if version != FORMAT_VERSION:
        raise ProjectFormatError(
            f"unsupported project format {version!r}, expected {FORMAT_VERSION}", "format"
        )
    meta_raw = data.get("metadata", {})
    if not isinstance(meta_raw, dict):
        raise ProjectFormatError(
            f"metadata must be an object, got {type(meta_raw).__name__}", "metadata"
        )
    metadata = ProjectMetadata(
        title=str(meta_raw.get("title", "")),
        author=str(meta_raw.get("author", "")),
        background=_rgba(meta_raw.get("background", (1, 1, 1, 1)), "metadata.background"),
        extra=_take(meta_raw, ("title", "author", "background")),
    )
    try:
        slide_aspect = float(data.get("slide_aspect", 16.0 / 9.0))
    except (TypeError, ValueError) as exc:
        raise ProjectFormatError(str(exc), "slide_aspect") from None
    return Project(
        elements=[_element_from(e, f"elements[{i}]") for i, e in enumerate(_section(data, "elements"))],
        slides=[_slide_from(s, f"slides[{i}]") for i, s in enumerate(_section(data, "slides"))],
        flow=[_step_from(s, f"flow[{i}]") for i, s in enumerate(_section(data, "flow"))],
        ink=[_collection_from(c, f"ink[{i}]") for i, c in enumerate(_section(data, "ink"))],
        metadata=metadata,
        slide_aspect=slide_aspect,
        extra=_take(
            data, ("format", "metadata", "elements", "slides", "flow", "ink", "slide_aspect")
        ),
    )


def _viewport_dict(v: Viewport) -> dict:
    return {"center": list(v.center), "zoom": v.zoom, "rotation": v.rotation, **v.extra}


def _keyframe_dict(k: Keyframe) -> dict:
    return {
        "viewport": _viewport_dict(k.viewport),
        "transition_duration": k.transition_duration,
        "dwell_duration": k.dwell_duration,
        "easing": k.easing,
        **k.extra,
    }


def project_to_dict(project: Project) -> dict:
    """Encode to the schema-v1 dict, unknown fields merged back in place."""
    data: dict[str, Any] = {"format": FORMAT_VERSION}
    data["metadata"] = {
        "title": project.metadata.title,
        "author": project.metadata.author,
        "background": list(project.metadata.background),
        **project.metadata.extra,
    }
    data["slide_aspect"] = project.slide_aspect
    data["elements"] = [
        {
            "id": el.id,
            "kind": el.kind,
            "position": list(el.position),
            "scale": el.scale,
            "rotation": el.rotation,
            "z_order": el.z_order,
            "payload": dict(el.payload),  # detached so callers may rewrite
            **el.extra,
        }
        for el in project.elements
    ]
    data["slides"] = [
        {
            "id": s.id,
            "frame": [s.frame.x, s.frame.y, s.frame.width, s.frame.height],
            "element_ids": list(s.element_ids),
            **s.extra,
        }
        for s in project.slides
    ]
    flow = []
    for step in project.flow:
        if isinstance(step, LinearStep):
            flow.append({"type": "linear", "slide_id": step.slide_id, **step.extra})
        else:
            flow.append({"type": "nonlinear", "keyframe": _keyframe_dict(step.keyframe), **step.extra})
    data["flow"] = flow
    data["ink"] = [
        {
            "id": coll.id,
            "strokes": [
                {
                    "samples": [[s.position[0], s.position[1], s.pressure] for s in st.samples],
                    "start_time": st.start_time,
                    "finish_time": st.finish_time,
                    "color": list(st.color),
                    "base_width": st.base_width,
                    **st.extra,
                }
                for st in coll.strokes
            ],
            **coll.extra,
        }
        for coll in project.ink
    ]
    data.update(project.extra)
    return data


def dumps_project(project: Project) -> str:
    return json.dumps(project_to_dict(project), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads_project(text: str, validate: bool = True) -> Project:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProjectFormatError(f"parse error: {exc.msg}", f"byte {exc.pos}") from None
    project = project_from_dict(data)
    if validate:
        diagnostics = document.validate_project(project)
        errors = [d for d in diagnostics if d.severity == "error"]
        if errors:
            raise ProjectFormatError(
                "project has dangling references or invalid values: "
                + "; ".join(str(d) for d in errors),
                errors[0].subject,
            )
    return project


def load_project(path: str | Path, validate: bool = True) -> Project:
    """Read and decode a project file."""
    return loads_project(Path(path).read_text(encoding="utf-8"), validate=validate)


def save_project(project: Project, path: str | Path) -> None:
    """Validate and write; refuses projects with validation errors."""
    diagnostics = document.validate_project(project)
    if document.has_errors(diagnostics):
        raise ValidationFailure([d for d in diagnostics if d.severity == "error"])
    Path(path).write_text(dumps_project(project), encoding="utf-8")
