"""Shared strategies and fixtures."""

import math

from hypothesis import strategies as st

from canvasflow import (
    CanvasElement,
    InkSample,
    Keyframe,
    LinearStep,
    NonlinearStep,
    Project,
    ProjectMetadata,
    Rect,
    Slide,
    Stroke,
    StrokeCollection,
    Viewport,
)

finite_coord = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
zoom_value = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)
angle_value = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


@st.composite
def viewports(draw):
    return Viewport(
        center=(draw(finite_coord), draw(finite_coord)),
        zoom=draw(zoom_value),
        rotation=draw(angle_value),
    )


@st.composite
def screens(draw):
    return (draw(st.integers(16, 4096)), draw(st.integers(16, 4096)))


@st.composite
def rects(draw):
    return Rect(
        x=draw(finite_coord),
        y=draw(finite_coord),
        width=draw(st.floats(min_value=1e-3, max_value=1e5)),
        height=draw(st.floats(min_value=1e-3, max_value=1e5)),
    )


coord = st.floats(min_value=-100, max_value=100, allow_nan=False, allow_infinity=False)
pressure = st.floats(min_value=0, max_value=1, allow_nan=False, allow_infinity=False)


@st.composite
def strokes(draw):
    points = draw(st.lists(st.tuples(coord, coord, pressure), min_size=1, max_size=6))
    start = draw(st.floats(0, 50))
    duration = draw(st.floats(0, 10))
    return Stroke(
        samples=[InkSample((x, y), p) for x, y, p in points],
        start_time=start,
        finish_time=start + duration,
        color=(0.0, 0.0, 0.0, 1.0),
        base_width=draw(st.floats(0.1, 5.0)),
    )


@st.composite
def stroke_collections(draw):
    return StrokeCollection(
        id=draw(st.sampled_from(["a", "b", "ink", "notes"])),
        strokes=draw(st.lists(strokes(), min_size=0, max_size=4)),
    )


@st.composite
def projects(draw):
    """Small valid projects: shapes, text, slides, ink, and a mixed flow."""
    elements = []
    shapes = draw(st.lists(st.tuples(coord, coord, st.floats(0.2, 3.0)), max_size=3))
    for i, (x, y, scale) in enumerate(shapes):
        elements.append(
            CanvasElement(
                id=f"shape{i}",
                kind="vector-shape",
                position=(x, y),
                scale=scale,
                payload={"shape": "rect", "w": 8.0, "h": 5.0, "fill": "#336699"},
            )
        )
    if draw(st.booleans()):
        elements.append(
            CanvasElement(id="label", kind="text", payload={"text": "note", "size": 4.0})
        )

    ink = []
    if draw(st.booleans()):
        coll = draw(stroke_collections())
        coll.id = "ink0"
        if coll.strokes:
            ink.append(coll)
            elements.append(
                CanvasElement(id="inkref", kind="ink-ref", payload={"collection": "ink0"})
            )

    slides = []
    if draw(st.booleans()):
        x, y = draw(coord), draw(coord)
        w = draw(st.floats(4, 64))
        slides.append(Slide(id="slide0", frame=Rect(x, y, w, w * 9 / 16), element_ids=[]))

    steps = draw(
        st.lists(
            st.tuples(coord, coord, st.floats(0.1, 20), st.floats(0, 1.5), st.floats(0, 1.0)),
            min_size=1,
            max_size=3,
        )
    )
    flow = []
    for cx, cy, zoom, transition, dwell in steps:
        if slides and draw(st.booleans()):
            flow.append(LinearStep(slide_id="slide0"))
        else:
            flow.append(
                NonlinearStep(
                    Keyframe(
                        viewport=Viewport(center=(cx, cy), zoom=zoom),
                        transition_duration=transition,
                        dwell_duration=dwell,
                        easing=draw(st.sampled_from(["linear", "smoothstep"])),
                    )
                )
            )

    return Project(
        elements=elements,
        slides=slides,
        flow=flow,
        ink=ink,
        metadata=ProjectMetadata(title="generated", background=(1, 1, 1, 1)),
    )


def assert_close(a, b, tol=1e-9):
    assert math.isclose(a, b, rel_tol=0, abs_tol=tol), f"{a} != {b} (tol {tol})"
