"""Exception hierarchy shared by the library and the CLI."""


class GroverLabError(Exception):
    pass


class ParseError(GroverLabError, ValueError):
    """Malformed construction expression or graph6 string."""


class GraphDomainError(GroverLabError, ValueError):
    """Well-formed expression with out-of-range arguments, e.g. cycle(2)."""


class UnsupportedGraph(GroverLabError):
    """Graph lies outside what an analysis supports (non-regular, disconnected, ...)."""


class IrreducibleCubicOrHigher(UnsupportedGraph):
    """Characteristic polynomial has an irreducible factor of degree >= 3."""

    def __init__(self, residual):
        self.residual = tuple(residual)
        super().__init__(
            f"irreducible factor of degree {len(self.residual) - 1} left after "
            "removing rational and quadratic roots"
        )


class FieldMismatch(GroverLabError, ValueError):
    """Arithmetic between elements of different quadratic fields."""


class UnrecognizedAngle(GroverLabError, ValueError):
    """Value is not the cosine of a rational multiple of pi (within the supported table)."""
