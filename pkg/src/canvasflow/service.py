"""HTTP service wrapping the engine for the web player and other clients.

Stateless except for optional static serving of exported bundles. The CLI
covers the same operations for single-shot local use.
"""

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import camera, decision, document, mindmap, projectio, render
from .errors import GeometryError, ProjectFormatError, ValidationFailure
from .model import Viewport

MAX_INLINE_FRAMES = 500


class ViewportModel(BaseModel):
    center: tuple[float, float] = (0.0, 0.0)
    zoom: float = 1.0
    rotation: float = 0.0

    def to_viewport(self) -> Viewport:
        return Viewport(center=self.center, zoom=self.zoom, rotation=self.rotation)

    @classmethod
    def from_viewport(cls, v: Viewport) -> "ViewportModel":
        return cls(center=v.center, zoom=v.zoom, rotation=v.rotation)


class InterpolateRequest(BaseModel):
    a: ViewportModel
    b: ViewportModel
    t: float


class FrameBoundsRequest(BaseModel):
    bbox: tuple[float, float, float, float]  # x, y, width, height
    screen: tuple[int, int]
    margin_fraction: float = 0.0


class DiagnosticModel(BaseModel):
    severity: str
    code: str
    message: str
    subject: str


class ValidateResponse(BaseModel):
    ok: bool
    diagnostics: list[DiagnosticModel]


class ProjectRequest(BaseModel):
    project: dict


class RenderRequest(BaseModel):
    project: dict
    fps: float = 30.0
    screen: tuple[int, int] = (1280, 720)


class RenderResponse(BaseModel):
    frame_count: int
    frames: list[str]


class TourRequest(BaseModel):
    outline: str
    ring_spacing: float = 100.0
    screen: tuple[int, int] = (1280, 720)
    margin: float = 0.1
    title: str = ""


class MatrixModel(BaseModel):
    labels: list[str]
    entries: list[list[float]]


class TableModel(BaseModel):
    alternatives: list[str]
    criteria: list[str]
    values: list[list[float]]


class AhpRequest(BaseModel):
    matrix: MatrixModel
    table: TableModel
    cost_criteria: list[str] = Field(default_factory=lambda: ["price"])
    checklists: dict[str, dict[str, float]] | None = None
    sweep_deltas: list[float] = Field(default_factory=lambda: list(decision.DEFAULT_SWEEP_DELTAS))


def _domain(call):
    try:
        return call()
    except (ValidationFailure, ProjectFormatError, GeometryError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None


def create_app(bundle_dir: Path | None = None) -> FastAPI:
    app = FastAPI(title="canvasflow", version="0.1.0")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/viewport/interpolate", response_model=ViewportModel)
    def interpolate(req: InterpolateRequest) -> ViewportModel:
        result = _domain(lambda: camera.interpolate_viewport(req.a.to_viewport(), req.b.to_viewport(), req.t))
        return ViewportModel.from_viewport(result)

    @app.post("/viewport/frame-bounds", response_model=ViewportModel)
    def frame_bounds(req: FrameBoundsRequest) -> ViewportModel:
        from .model import Rect

        result = _domain(lambda: camera.frame_bounds(Rect(*req.bbox), req.screen, req.margin_fraction))
        return ViewportModel.from_viewport(result)

    @app.post("/project/validate", response_model=ValidateResponse)
    def validate(req: ProjectRequest) -> ValidateResponse:
        project = _domain(lambda: projectio.project_from_dict(req.project))
        diagnostics = document.validate_project(project)
        return ValidateResponse(
            ok=not document.has_errors(diagnostics),
            diagnostics=[
                DiagnosticModel(
                    severity=d.severity, code=d.code, message=d.message, subject=d.subject
                )
                for d in diagnostics
            ],
        )

    @app.post("/project/render", response_model=RenderResponse)
    def render_inline(req: RenderRequest) -> RenderResponse:
        def run():
            project = projectio.project_from_dict(req.project)
            diagnostics = document.validate_project(project)
            if document.has_errors(diagnostics):
                raise ValidationFailure([d for d in diagnostics if d.severity == "error"])
            total = render.expected_frame_count(project, req.screen, req.fps)
            if total > MAX_INLINE_FRAMES:
                raise ValueError(
                    f"{total} frames exceed the inline limit of {MAX_INLINE_FRAMES}; "
                    "lower fps or render via the CLI"
                )
            return [
                render.render_svg(project, viewport, req.screen, t)
                for _, t, viewport in render.walk_flow(project, req.screen, req.fps)
            ]

        frames = _domain(run)
        return RenderResponse(frame_count=len(frames), frames=frames)

    @app.post("/project/debug-states")
    def debug_states(req: RenderRequest) -> dict:
        def run():
            project = projectio.project_from_dict(req.project)
            return render.emit_debug_states(project, req.screen, req.fps)

        return _domain(run)

    @app.post("/tour/compile")
    def tour_compile(req: TourRequest) -> dict:
        def run():
            root = mindmap.parse_outline(req.outline)
            project = mindmap.compile_project(
                root,
                ring_spacing=req.ring_spacing,
                screen=req.screen,
                margin=req.margin,
                title=req.title,
            )
            return projectio.project_to_dict(project)

        return {"project": _domain(run)}

    @app.post("/ahp/report")
    def ahp_report(req: AhpRequest) -> dict:
        def run():
            matrix = decision.PairwiseMatrix(labels=req.matrix.labels, entries=req.matrix.entries)
            table = decision.DecisionTable(
                alternatives=req.table.alternatives,
                criteria=req.table.criteria,
                values=req.table.values,
            )
            cost = {c.lower() for c in req.cost_criteria}
            specs = [
                decision.CriterionSpec(name, "cost" if name.lower() in cost else "benefit")
                for name in table.criteria
            ]
            checklists = None
            if req.checklists is not None:
                checklists = {
                    name: decision.FeatureChecklist(scores=scores)
                    for name, scores in req.checklists.items()
                }
            return decision.build_report(
                matrix, table, specs=specs, checklists=checklists, sweep_deltas=req.sweep_deltas
            )

        return _domain(run)

    if bundle_dir is not None:
        app.mount("/bundles", StaticFiles(directory=bundle_dir), name="bundles")

    return app
