import json
import math
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from canvasflow import Keyframe, NonlinearStep, Project, Viewport
from canvasflow.bundle import export_bundle
from canvasflow.camera import interpolate_viewport
from canvasflow.projectio import load_project, project_to_dict
from canvasflow.service import create_app

DATA = Path(__file__).resolve().parents[1] / "src" / "canvasflow" / "data"


@pytest.fixture()
def client():
    return TestClient(create_app())


def demo_dict():
    return project_to_dict(load_project(DATA / "demo_project.json"))


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_interpolate_matches_core(client):
    a = {"center": [0.0, 0.0], "zoom": 1.0, "rotation": 0.0}
    b = {"center": [10.0, 0.0], "zoom": 4.0, "rotation": 0.0}
    response = client.post("/viewport/interpolate", json={"a": a, "b": b, "t": 0.5})
    assert response.status_code == 200
    body = response.json()
    expect = interpolate_viewport(Viewport((0, 0), 1, 0), Viewport((10, 0), 4, 0), 0.5)
    assert body["center"] == list(expect.center)
    assert math.isclose(body["zoom"], expect.zoom, abs_tol=1e-12)


def test_interpolate_rejects_bad_t(client):
    a = {"center": [0, 0], "zoom": 1, "rotation": 0}
    response = client.post("/viewport/interpolate", json={"a": a, "b": a, "t": 1.5})
    assert response.status_code == 422


def test_frame_bounds_endpoint(client):
    response = client.post(
        "/viewport/frame-bounds",
        json={"bbox": [0, 0, 100, 50], "screen": [800, 600], "margin_fraction": 0.1},
    )
    body = response.json()
    assert body["center"] == [50.0, 25.0]
    assert math.isclose(body["zoom"], 800 / 110, abs_tol=1e-9)


def test_validate_endpoint(client):
    ok = client.post("/project/validate", json={"project": demo_dict()}).json()
    assert ok["ok"] is True and ok["diagnostics"] == []

    broken = {"format": 1, "flow": [{"type": "linear", "slide_id": "ghost"}]}
    bad = client.post("/project/validate", json={"project": broken}).json()
    assert bad["ok"] is False
    assert any(d["code"] == "dangling-slide" for d in bad["diagnostics"])


def test_render_endpoint_counts_frames(client):
    project = project_to_dict(
        Project(flow=[NonlinearStep(Keyframe(Viewport((0, 0), 2, 0), 1.0, 0.5))])
    )
    body = client.post(
        "/project/render", json={"project": project, "fps": 2.0, "screen": [320, 200]}
    ).json()
    assert body["frame_count"] == 3
    assert all(frame.startswith("<?xml") for frame in body["frames"])


def test_render_endpoint_caps_inline_frames(client):
    project = project_to_dict(
        Project(flow=[NonlinearStep(Keyframe(Viewport((0, 0), 2, 0), 100.0, 0.0))])
    )
    response = client.post(
        "/project/render", json={"project": project, "fps": 30.0, "screen": [320, 200]}
    )
    assert response.status_code == 422
    assert "limit" in response.json()["detail"]


def test_tour_compile_endpoint(client):
    outline = (DATA / "demo_outline.txt").read_text()
    body = client.post("/tour/compile", json={"outline": outline}).json()
    project = body["project"]
    assert project["format"] == 1
    assert project["flow"]
    # result are loadable, valid projects
    check = client.post("/project/validate", json={"project": project}).json()
    assert check["ok"] is True


def test_ahp_report_endpoint_matches_cli_pipeline(client):
    matrix = json.loads((DATA / "criteria_judgments.json").read_text())
    table_rows = (DATA / "tools.csv").read_text().strip().splitlines()
    criteria = table_rows[0].split(",")[1:]
    alternatives = [r.split(",")[0] for r in table_rows[1:]]
    values = [[float(x) for x in r.split(",")[1:]] for r in table_rows[1:]]
    body = client.post(
        "/ahp/report",
        json={
            "matrix": matrix,
            "table": {"alternatives": alternatives, "criteria": criteria, "values": values},
        },
    ).json()
    assert abs(body["weights"]["applicability"] - 0.294) <= 0.005
    assert body["sensitivity"]["simplicity"]["stable"]["Academic Presenter"] is False


def test_debug_states_endpoint(client):
    body = client.post(
        "/project/debug-states", json={"project": demo_dict(), "fps": 4.0, "screen": [320, 200]}
    ).json()
    assert body["interpolation"] and body["step_viewports"]


def test_bundle_static_serving(tmp_path):
    project = load_project(DATA / "demo_project.json")
    export_bundle(project, tmp_path / "demo", base_dir=DATA)
    client = TestClient(create_app(bundle_dir=tmp_path))
    manifest = client.get("/bundles/demo/manifest.json")
    assert manifest.status_code == 200
    assert manifest.json()["project"] == "project.json"
    assert client.get("/bundles/demo/project.json").status_code == 200
