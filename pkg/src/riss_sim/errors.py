"""Exception hierarchy shared by every module."""


class RissSimError(Exception):
    """Base class for all errors raised by riss_sim."""


class InvalidInputError(RissSimError, ValueError):
    pass


class DegenerateGeometryError(RissSimError, ValueError):
    """Two points that must be distinct coincide (direction undefined)."""


class InfeasiblePlacementError(RissSimError):
    """The orthogonal slot grid cannot host the requested deployment."""


class OracleInfeasibleError(RissSimError):
    """An exhaustive test oracle was asked for a problem size it cannot enumerate."""


class ConfigError(InvalidInputError):
    """A scenario document violates an invariant.

    Attributes:
        path: JSON path of the first offending value, e.g. ``$.riss[1].axis_u``.
    """

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message
