class HydrowalksError(Exception):
    """Base class for all library errors."""


class GraphParseError(HydrowalksError):
    """Malformed graph or walk text; message names the offending line."""


class WalkError(HydrowalksError):
    """Sequence of arcs is not a valid walk, or violates an operation precondition."""


class ModelError(HydrowalksError):
    """The safety model is infeasible or undefined on this graph."""


class CycleGraphError(ModelError):
    """Graph is a single cycle; safe walks are not defined there."""


class OracleSizeError(HydrowalksError):
    """Instance exceeds the brute-force oracle's size caps."""
