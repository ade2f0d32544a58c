"""Exception and warning classes.

Domain errors derive from :class:`PolytopeError`; the CLI maps them to exit
status 1.  Input-format errors derive from :class:`PolySyntaxError` and map to
exit status 2.
"""


class PolytopeError(Exception):
    """Base class for domain errors raised by the library."""


class ZeroVector(PolytopeError, ValueError):
    pass


class EmptyPolytope(PolytopeError):
    pass


class Unbounded(PolytopeError):
    pass


class NotFullDimensional(PolytopeError):
    def __init__(self, affine_dim, ambient_dim):
        super().__init__(
            f"polytope is not full-dimensional: affine hull has dimension "
            f"{affine_dim} in ambient dimension {ambient_dim}"
        )
        self.affine_dim = affine_dim
        self.ambient_dim = ambient_dim


class DuplicateFacetLabelConflict(PolytopeError):
    pass


class NotSimple(PolytopeError):
    pass


class NotValid(PolytopeError):
    """The polytope is not simple away from its vertices."""


class EmptyCut(PolytopeError):
    pass


class NoInteriorPoint(PolytopeError):
    pass


class InvalidReeb(PolytopeError):
    pass


class EpsilonTooLarge(PolytopeError):
    pass


class DesingularizationFailed(PolytopeError):
    pass


class RankDeficient(PolytopeError):
    pass


class PolySyntaxError(ValueError):
    """Malformed ``.poly`` input; carries 1-based ``line`` and ``column``."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class DimensionMismatch(PolySyntaxError):
    pass


class TrivialCutWarning(UserWarning):
    """A cut left the polytope unchanged."""


class NonPrimitiveNormalWarning(UserWarning):
    """A facet normal was divided by its content while parsing."""
