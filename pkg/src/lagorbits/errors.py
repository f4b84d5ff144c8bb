"""Exception hierarchy.

Every mathematical failure derives from :class:`MathError`; the CLI maps
those to exit code 3, :class:`TooLarge` to 4 and :class:`SchemaError` to 2.
"""


class LagOrbitsError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class SchemaError(LagOrbitsError):
    code = "schema"


class MathError(LagOrbitsError):
    code = "precondition"


class PreconditionError(MathError):
    code = "precondition"


class DimensionMismatch(MathError):
    code = "dimension_mismatch"


class RangeError(MathError):
    code = "range"


class ShapeError(MathError):
    code = "shape"


class NotSameOrbit(MathError):
    code = "not_same_orbit"


class InvalidGraph(MathError):
    code = "invalid_graph"


class InvalidElement(MathError):
    code = "invalid_element"


class NotInL00(MathError):
    code = "not_in_l00"


class NoDeeperStratum(MathError):
    code = "no_deeper_stratum"


class TooLarge(LagOrbitsError):
    code = "too_large"
