"""Exception hierarchy shared by the library and the CLI."""


class DMEntangleError(Exception):
    """Base class for all package errors."""


class LinalgError(DMEntangleError, ValueError):
    pass


class NotSquare(LinalgError):
    pass


class NotHermitian(LinalgError):
    pass


class NonFinite(LinalgError):
    pass


class StateError(DMEntangleError, ValueError):
    pass


class ZeroStateError(StateError):
    """The superposition cancels to the zero vector."""


class NotNormalized(StateError):
    """A supplied normalization constant does not give a unit-norm state."""


class NotDensityMatrix(DMEntangleError, ValueError):
    pass


class WrongDimension(DMEntangleError, ValueError):
    pass


class UnknownScenario(DMEntangleError, KeyError):
    pass


class ConfigError(DMEntangleError):
    """Base for configuration problems (CLI exit code 2)."""


class ParseError(ConfigError):
    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:{column or 1}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")


class UnknownPreset(ConfigError):
    pass
