"""Mind-map diagrams: radial tree layout, keyframe tours, infographic timelines.

Layout partitions each node's angular sector among its children in
proportion to leaf counts, which keeps dense branches from crowding.
Tours compile a diagram (or a list of prioritized regions) into the
keyframe sequence a presenter walks through: wide overview first, then
depth-first into the detail, then back out.
"""

import math
import re
from dataclasses import dataclass, field

from . import camera
from .model import (
    TAU,
    CanvasElement,
    Keyframe,
    Project,
    ProjectMetadata,
    NonlinearStep,
    Rect,
)

NODE_KIND_COLORS = {"central": "#31548f", "branch": "#5b7db1", "leaf": "#d62728"}

# Node box extents as fractions of ring spacing; tours frame these boxes.
NODE_BOX_WIDTH = 0.9
NODE_BOX_HEIGHT = 0.45

DEFAULT_TOUR_TRANSITION = 1.0
DEFAULT_TOUR_DWELL = 0.0


@dataclass
class MindMapNode:
    id: str
    label: str
    children: list["MindMapNode"] = field(default_factory=list)
    kind: str = "leaf"
    color: str | None = None
    position_override: tuple[float, float] | None = None

    @property
    def style_color(self) -> str:
        return self.color or NODE_KIND_COLORS[self.kind]


@dataclass(frozen=True)
class PrioritizedRegion:
    """A rectangle of an infographic with an ordering priority (low = first)."""

    bbox: Rect
    priority: int
    label: str = ""


@dataclass(frozen=True)
class NodePlacement:
    position: tuple[float, float]
    sector: tuple[float, float]
    depth: int


@dataclass
class RadialLayout:
    ring_spacing: float
    placements: dict[str, NodePlacement]

    def node_box(self, node_id: str) -> Rect:
        x, y = self.placements[node_id].position
        w = NODE_BOX_WIDTH * self.ring_spacing
        h = NODE_BOX_HEIGHT * self.ring_spacing
        return Rect(x - w / 2.0, y - h / 2.0, w, h)


def _leaf_count(node: MindMapNode) -> int:
    if not node.children:
        return 1
    return sum(_leaf_count(c) for c in node.children)


def _validate_tree(root: MindMapNode) -> None:
    if root.kind != "central":
        raise ValueError(f"root node must have kind 'central', got {root.kind!r}")
    seen_ids: set[str] = set()
    seen_nodes: set[int] = set()
    stack = [(root, 0)]
    while stack:
        node, depth = stack.pop()
        if id(node) in seen_nodes:
            raise ValueError(f"cyclic structure: node {node.id!r} reachable twice")
        seen_nodes.add(id(node))
        if node.id in seen_ids:
            raise ValueError(f"duplicate node id {node.id!r}")
        seen_ids.add(node.id)
        if node.kind == "leaf" and node.children:
            raise ValueError(f"leaf node {node.id!r} must not have children")
        if depth > 0 and node.kind == "central":
            raise ValueError(f"non-root node {node.id!r} cannot be 'central'")
        for child in node.children:
            stack.append((child, depth + 1))


def radial_layout(root: MindMapNode, ring_spacing: float) -> RadialLayout:
    """Place each node on a ring at depth * ring_spacing inside its sector.

    The root sits at the origin with the full circle; children split the
    parent sector proportionally to their leaf counts and sit on their
    sector's bisector. Sibling sectors are disjoint by construction.
    """
    if ring_spacing <= 0:
        raise ValueError(f"ring_spacing must be positive, got {ring_spacing}")
    _validate_tree(root)
    placements: dict[str, NodePlacement] = {}

    def place(node: MindMapNode, depth: int, sector: tuple[float, float]) -> None:
        start, end = sector
        if depth == 0:
            position = (0.0, 0.0)
        else:
            angle = (start + end) / 2.0
            radius = depth * ring_spacing
            position = (radius * math.cos(angle), radius * math.sin(angle))
        if node.position_override is not None:
            position = node.position_override
        placements[node.id] = NodePlacement(position, sector, depth)
        total = _leaf_count(node)
        cursor = start
        for child in node.children:
            width = (end - start) * _leaf_count(child) / total
            place(child, depth + 1, (cursor, cursor + width))
            cursor += width

    place(root, 0, (0.0, TAU))
    return RadialLayout(ring_spacing=ring_spacing, placements=placements)


def subtree_bbox(node: MindMapNode, layout: RadialLayout) -> Rect:
    box = layout.node_box(node.id)
    for child in node.children:
        box = box.union(subtree_bbox(child, layout))
    return box


def tour_stops(root: MindMapNode, layout: RadialLayout) -> list[tuple[str, Rect]]:
    """Depth-first itinerary: every node once, framing its subtree (branches)
    or its own box (leaves)."""
    stops: list[tuple[str, Rect]] = []

    def visit(node: MindMapNode) -> None:
        box = subtree_bbox(node, layout) if node.children else layout.node_box(node.id)
        stops.append((node.id, box))
        for child in node.children:
            visit(child)

    visit(root)
    return stops


def _keyframes_from_boxes(
    boxes: list[Rect],
    screen: tuple[int, int],
    margin: float,
    transition: float,
    dwell: float,
) -> list[Keyframe]:
    frames: list[Keyframe] = []
    for box in boxes:
        viewport = camera.frame_bounds(box, screen, margin)
        kf = Keyframe(viewport, transition_duration=transition, dwell_duration=dwell)
        if frames and frames[-1].viewport == viewport:
            continue  # consecutive duplicates collapse (e.g. root vs. overview)
        frames.append(kf)
    return frames


def generate_tour(
    root: MindMapNode,
    layout: RadialLayout,
    screen: tuple[int, int],
    margin: float = 0.1,
    transition: float = DEFAULT_TOUR_TRANSITION,
    dwell: float = DEFAULT_TOUR_DWELL,
) -> list[Keyframe]:
    """Overview, depth-first node visits, closing overview."""
    overview = subtree_bbox(root, layout)
    boxes = [overview] + [box for _, box in tour_stops(root, layout)] + [overview]
    return _keyframes_from_boxes(boxes, screen, margin, transition, dwell)


def build_keyframe_timeline(
    regions: list[PrioritizedRegion],
    screen: tuple[int, int],
    margin: float = 0.1,
    transition: float = DEFAULT_TOUR_TRANSITION,
    dwell: float = DEFAULT_TOUR_DWELL,
) -> list[Keyframe]:
    """Animate a static infographic: overview of all regions, then each
    region by ascending priority (ties keep input order)."""
    if not regions:
        raise ValueError("need at least one prioritized region")
    for region in regions:
        if region.bbox.width <= 0 or region.bbox.height <= 0:
            raise ValueError(f"region {region.label!r} has a degenerate bbox")
    union = regions[0].bbox
    for region in regions[1:]:
        union = union.union(region.bbox)
    ordered = sorted(regions, key=lambda r: r.priority)
    boxes = [union] + [r.bbox for r in ordered]
    frames: list[Keyframe] = []
    for box in boxes:
        viewport = camera.frame_bounds(box, screen, margin)
        frames.append(Keyframe(viewport, transition_duration=transition, dwell_duration=dwell))
    return frames


# --- outline import and project compilation --------------------------------

_SLUG_STRIP = re.compile(r"[^a-z0-9]+")


def _slug(label: str, taken: set[str]) -> str:
    base = _SLUG_STRIP.sub("-", label.lower()).strip("-") or "node"
    slug = base
    n = 2
    while slug in taken:
        slug = f"{base}-{n}"
        n += 1
    taken.add(slug)
    return slug


def parse_outline(text: str) -> MindMapNode:
    """Build a tree from tab-indented outline text (one node per line).

    Leading tabs set the depth; the single depth-0 line is the central
    topic. Blank lines are skipped.
    """
    taken: set[str] = set()
    root: MindMapNode | None = None
    path: list[MindMapNode] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        depth = len(raw) - len(raw.lstrip("\t"))
        label = raw.strip()
        node = MindMapNode(id=_slug(label, taken), label=label, kind="leaf")
        if depth == 0:
            if root is not None:
                raise ValueError(f"line {lineno}: second root {label!r}; outlines have one")
            node.kind = "central"
            root = node
            path = [node]
            continue
        if root is None:
            raise ValueError(f"line {lineno}: indented line before the central topic")
        if depth > len(path):
            raise ValueError(f"line {lineno}: indent jumps from {len(path) - 1} to {depth}")
        parent = path[depth - 1]
        if parent.kind == "leaf":
            parent.kind = "branch"
        parent.children.append(node)
        path[depth:] = [node]
    if root is None:
        raise ValueError("outline is empty")
    return root


def _edge_path(layout: RadialLayout, parent: MindMapNode, child: MindMapNode) -> str:
    (x0, y0) = layout.placements[parent.id].position
    (x3, y3) = layout.placements[child.id].position
    angle = (layout.placements[child.id].sector[0] + layout.placements[child.id].sector[1]) / 2.0
    r0 = math.hypot(x0, y0)
    r3 = math.hypot(x3, y3)
    pull = 0.35 * layout.ring_spacing
    x1, y1 = ((r0 + pull) * math.cos(angle), (r0 + pull) * math.sin(angle))
    x2, y2 = ((r3 - pull) * math.cos(angle), (r3 - pull) * math.sin(angle))
    return f"M {x0!r} {y0!r} C {x1!r} {y1!r} {x2!r} {y2!r} {x3!r} {y3!r}"


def compile_project(
    root: MindMapNode,
    ring_spacing: float = 100.0,
    screen: tuple[int, int] = (1280, 720),
    margin: float = 0.1,
    title: str = "",
) -> Project:
    """Compile a mind map into a presentable project: node/edge elements
    plus a nonlinear flow that walks the tour."""
    layout = radial_layout(root, ring_spacing)
    elements: list[CanvasElement] = []

    def emit(node: MindMapNode, parent: MindMapNode | None) -> None:
        x, y = layout.placements[node.id].position
        if parent is not None:
            elements.append(
                CanvasElement(
                    id=f"edge-{parent.id}-{node.id}",
                    kind="vector-shape",
                    payload={
                        "shape": "path",
                        "d": _edge_path(layout, parent, node),
                        "stroke": "#9aa7b8",
                        "stroke_width": 0.02 * ring_spacing,
                    },
                    z_order=0,
                )
            )
        elements.append(
            CanvasElement(
                id=f"{node.id}-shape",
                kind="vector-shape",
                position=(x, y),
                payload={
                    "shape": "ellipse",
                    "rx": NODE_BOX_WIDTH * ring_spacing / 2.0,
                    "ry": NODE_BOX_HEIGHT * ring_spacing / 2.0,
                    "fill": node.style_color,
                },
                z_order=1,
            )
        )
        elements.append(
            CanvasElement(
                id=f"{node.id}-label",
                kind="text",
                position=(x, y),
                payload={"text": node.label, "size": 0.12 * ring_spacing, "color": "#ffffff"},
                z_order=2,
            )
        )
        for child in node.children:
            emit(child, node)

    emit(root, None)
    flow = [NonlinearStep(kf) for kf in generate_tour(root, layout, screen, margin)]
    return Project(
        elements=elements,
        flow=flow,
        metadata=ProjectMetadata(title=title or root.label),
    )
