"""Self-contained presentation bundles for the web player.

A bundle directory holds a normalized project.json, every referenced
asset copied under assets/, and a manifest the player loads first. No
reference escapes the directory, and re-exporting an unchanged project
reproduces the bundle byte for byte.
"""

import json
import re
import shutil
from pathlib import Path

from . import document
from .errors import ExportError, ValidationFailure
from .model import ASSET_PAYLOAD_KEYS, Project
from .projectio import project_to_dict
from .render import SLIDE_MARGIN

_SAFE = re.compile(r"[^A-Za-z0-9._-]+")


def _asset_refs(project: Project) -> list[tuple[str, str]]:
    """(element id, payload path) for every asset reference, in document order."""
    refs = []
    for el in project.elements:
        key = ASSET_PAYLOAD_KEYS.get(el.kind)
        if key and el.payload.get(key):
            refs.append((el.id, str(el.payload[key])))
    return refs


def _sanitize(path_str: str, taken: set[str]) -> str:
    name = _SAFE.sub("_", path_str.replace("\\", "/").lstrip("./").replace("/", "_"))
    name = name or "asset"
    candidate = name
    n = 2
    while candidate in taken:
        candidate = f"{n}_{name}"
        n += 1
    taken.add(candidate)
    return candidate


def export_bundle(project: Project, out_dir: str | Path, base_dir: str | Path = ".") -> Path:
    """Write the bundle; asset paths resolve relative to base_dir.

    Raises ExportError listing every missing asset before writing anything.
    """
    diagnostics = document.validate_project(project)
    if document.has_errors(diagnostics):
        raise ValidationFailure([d for d in diagnostics if d.severity == "error"])

    base = Path(base_dir)
    refs = _asset_refs(project)
    sources = sorted(set(path for _, path in refs))
    missing = [p for p in sources if not (base / p).is_file()]
    if missing:
        raise ExportError(f"missing asset files: {', '.join(missing)}", missing=missing)

    taken: set[str] = set()
    mapping = {src: f"assets/{_sanitize(src, taken)}" for src in sources}

    out = Path(out_dir)
    (out / "assets").mkdir(parents=True, exist_ok=True)
    for src, dest in mapping.items():
        shutil.copyfile(base / src, out / dest)

    data = project_to_dict(project)
    for el in data["elements"]:
        key = ASSET_PAYLOAD_KEYS.get(el["kind"])
        if key and el["payload"].get(key):
            el["payload"][key] = mapping[str(el["payload"][key])]
    (out / "project.json").write_text(
        json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8"
    )

    manifest = {
        "format": 1,
        "title": project.metadata.title,
        "project": "project.json",
        "step_count": len(project.flow),
        "assets": [{"source": src, "path": mapping[src]} for src in sources],
        "defaults": {"slide_margin": SLIDE_MARGIN, "slide_transition": 1.0},
    }
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    return out
