"""Command-line surface: validate, render, export, tour, ahp, serve.

Exit codes: 0 success, 1 validation or domain error, 2 usage error.
"""

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import bundle, decision, document, mindmap, projectio, render
from .errors import ExportError, GeometryError, NumericalError, ProjectFormatError, ValidationFailure


def _data_path(name: str):
    return resources.files("canvasflow.data").joinpath(name)


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        size = (int(w), int(h))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, got {text!r}") from None
    if size[0] <= 0 or size[1] <= 0:
        raise argparse.ArgumentTypeError(f"dimensions must be positive, got {text!r}")
    return size


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="canvasflow", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("validate", help="check a project file and print diagnostics")
    p.add_argument("project")

    p = sub.add_parser("render", help="render the flow to SVG frames or a replay manifest")
    p.add_argument("project")
    p.add_argument("--fps", type=float, default=30.0)
    p.add_argument("--size", type=_parse_size, default=(1280, 720), metavar="WxH")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=render.RENDER_FORMATS, default="svg-sequence")
    p.add_argument(
        "--emit-debug-states",
        metavar="PATH",
        help="also write shared player-contract vectors to PATH",
    )

    p = sub.add_parser("export", help="export a self-contained bundle for the web player")
    p.add_argument("project")
    p.add_argument("--out", required=True)

    p = sub.add_parser("tour", help="compile a tab-indented outline into a mind-map tour project")
    p.add_argument("outline")
    p.add_argument("--out", required=True)
    p.add_argument("--ring-spacing", type=float, default=100.0)
    p.add_argument("--screen", type=_parse_size, default=(1280, 720), metavar="WxH")
    p.add_argument("--margin", type=float, default=0.1)
    p.add_argument("--title", default="")

    p = sub.add_parser("ahp", help="criterion weights, consistency, ranking, sensitivity")
    p.add_argument("--matrix", help="pairwise judgment matrix JSON (default: bundled data)")
    p.add_argument("--table", help="decision table CSV (default: bundled data)")
    p.add_argument("--features", help="feature checklist JSON (default: bundled data)")
    p.add_argument("--out", help="write the full-precision JSON report here")
    p.add_argument(
        "--cost",
        action="append",
        default=None,
        metavar="CRITERION",
        help="treat CRITERION as a cost (default: price)",
    )

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--bundles", help="directory of exported bundles to serve statically")

    return parser


def _cmd_validate(args) -> int:
    project = projectio.load_project(args.project, validate=False)
    diagnostics = document.validate_project(project)
    for d in diagnostics:
        print(d)
    if document.has_errors(diagnostics):
        return 1
    print(f"ok: {len(project.elements)} elements, {len(project.slides)} slides, "
          f"{len(project.flow)} flow steps")
    return 0


def _cmd_render(args) -> int:
    project = projectio.load_project(args.project)
    spec = render.RenderSpec(out_dir=Path(args.out), fps=args.fps, format=args.format, screen=args.size)
    written = render.render_frames(project, spec)
    print(f"wrote {len(written)} file(s) to {args.out}")
    if args.emit_debug_states:
        states = render.emit_debug_states(project, args.size, args.fps)
        Path(args.emit_debug_states).write_text(
            json.dumps(states, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        print(f"wrote debug states to {args.emit_debug_states}")
    return 0


def _cmd_export(args) -> int:
    project = projectio.load_project(args.project)
    out = bundle.export_bundle(project, args.out, base_dir=Path(args.project).parent)
    print(f"exported bundle to {out}")
    return 0


def _cmd_tour(args) -> int:
    root = mindmap.parse_outline(Path(args.outline).read_text(encoding="utf-8"))
    project = mindmap.compile_project(
        root,
        ring_spacing=args.ring_spacing,
        screen=args.screen,
        margin=args.margin,
        title=args.title,
    )
    projectio.save_project(project, args.out)
    print(f"compiled {len(project.elements)} elements, {len(project.flow)} tour steps -> {args.out}")
    return 0


def _read(arg: str | None, default_name: str) -> str:
    if arg:
        return Path(arg).read_text(encoding="utf-8")
    return _data_path(default_name).read_text(encoding="utf-8")


def _cmd_ahp(args) -> int:
    matrix = decision.load_pairwise_matrix(_read(args.matrix, "criteria_judgments.json"))
    table = decision.load_decision_table(_read(args.table, "tools.csv"))
    checklists = decision.load_feature_checklists(_read(args.features, "feature_checklists.json"))
    cost_names = {c.lower() for c in (args.cost or ["price"])}
    specs = [
        decision.CriterionSpec(name, "cost" if name.lower() in cost_names else "benefit")
        for name in table.criteria
    ]
    report = decision.build_report(matrix, table, specs=specs, checklists=checklists)
    sys.stdout.write(decision.format_report(report))
    if args.out:
        Path(args.out).write_text(
            json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        print(f"wrote report to {args.out}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(bundle_dir=Path(args.bundles) if args.bundles else None)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "render": _cmd_render,
    "export": _cmd_export,
    "tour": _cmd_tour,
    "ahp": _cmd_ahp,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](args)
    except (
        ValidationFailure,
        ProjectFormatError,
        GeometryError,
        NumericalError,
        ExportError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
