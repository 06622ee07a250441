"""Exception types shared across the engine."""


class GeometryError(ValueError):
    """Degenerate geometry: zero-area rectangles, invalid viewports."""


class NumericalError(RuntimeError):
    """A numerical routine failed to converge."""


class ProjectFormatError(ValueError):
    """Project file cannot be parsed or violates the schema.

    ``location`` points at the offending byte offset (parse errors) or
    field path (schema errors).
    """

    def __init__(self, message: str, location: str | None = None):
        super().__init__(message if location is None else f"{message} ({location})")
        self.location = location


class ValidationFailure(ValueError):
    """Operation refused because the project has validation errors."""

    def __init__(self, diagnostics):
        lines = "; ".join(str(d) for d in diagnostics)
        super().__init__(f"project failed validation: {lines}")
        self.diagnostics = list(diagnostics)


class ExportError(RuntimeError):
    """Bundle export failed; ``missing`` lists unresolvable asset paths."""

    def __init__(self, message: str, missing: list[str] | None = None):
        super().__init__(message)
        self.missing = missing or []
