"""canvasflow: an infinite-canvas presentation engine.

Vector content lives on one borderless canvas; presentations interleave
keyframed zoom/pan/rotate camera flows with fixed-aspect slide frames,
replay pressure-aware handwriting, compile mind maps into camera tours,
and rank design alternatives with a pairwise-judgment decision pipeline.
"""

from .camera import (
    canvas_to_screen,
    frame_bounds,
    interpolate_viewport,
    sample_transition,
    screen_to_canvas,
)
from .decision import (
    CriterionSpec,
    DecisionTable,
    FeatureChecklist,
    PairwiseMatrix,
    applicability_score,
    consistency_ratio,
    normalize_criterion,
    priority_vector,
    rank_alternatives,
    sensitivity_sweep,
)
from .document import flow_advance, flow_back, slide_viewport, validate_project
from .ink import (
    InkSample,
    PenStyle,
    Stroke,
    StrokeCollection,
    append_sample,
    replay_visible,
    stroke_bbox,
    stroke_outline,
)
from .mindmap import (
    MindMapNode,
    PrioritizedRegion,
    build_keyframe_timeline,
    generate_tour,
    parse_outline,
    radial_layout,
)
from .model import (
    CanvasElement,
    Diagnostic,
    Keyframe,
    LinearStep,
    NonlinearStep,
    Project,
    ProjectMetadata,
    Rect,
    Slide,
    Viewport,
)
from .projectio import load_project, save_project

__version__ = "0.1.0"

__all__ = [
    "CanvasElement",
    "CriterionSpec",
    "DecisionTable",
    "Diagnostic",
    "FeatureChecklist",
    "InkSample",
    "Keyframe",
    "LinearStep",
    "MindMapNode",
    "NonlinearStep",
    "PairwiseMatrix",
    "PenStyle",
    "PrioritizedRegion",
    "Project",
    "ProjectMetadata",
    "Rect",
    "Slide",
    "Stroke",
    "StrokeCollection",
    "Viewport",
    "append_sample",
    "applicability_score",
    "build_keyframe_timeline",
    "canvas_to_screen",
    "consistency_ratio",
    "flow_advance",
    "flow_back",
    "frame_bounds",
    "generate_tour",
    "interpolate_viewport",
    "load_project",
    "normalize_criterion",
    "parse_outline",
    "priority_vector",
    "radial_layout",
    "rank_alternatives",
    "replay_visible",
    "sample_transition",
    "save_project",
    "screen_to_canvas",
    "sensitivity_sweep",
    "slide_viewport",
    "stroke_bbox",
    "stroke_outline",
    "validate_project",
]
