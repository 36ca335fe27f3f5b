"""Exception hierarchy shared across the toolkit."""


class CogmapError(Exception):
    """Base class for all toolkit errors."""


class MapFormatError(CogmapError):
    """A map document is structurally malformed (bad JSON, missing fields,
    unknown ids, out-of-range values)."""


class MapValidationError(CogmapError):
    """A structurally well-formed map violates a model invariant."""

    def __init__(self, errors, warnings=()):
        self.errors = list(errors)
        self.warnings = list(warnings)
        super().__init__("; ".join(self.errors))


class NumericalError(CogmapError):
    """A numerical procedure failed (non-finite likelihood, degenerate
    denominator, non-convergent fixed point)."""


class GenerationError(CogmapError):
    """A synthetic population spec could not produce a valid map."""
