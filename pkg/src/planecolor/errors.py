"""Exception hierarchy shared by all modules."""


class PlaneColorError(Exception):
    """Base class for every error raised by the package."""


class GraphError(PlaneColorError, ValueError):
    """Invalid rotation system or graph query."""


class MissingReverseEdge(GraphError):
    pass


class LoopOrMultiEdge(GraphError):
    pass


class Disconnected(GraphError):
    pass


class EulerViolation(GraphError):
    pass


class NotAFace(GraphError):
    pass


class NotACycle(GraphError):
    pass


class LoopCreated(GraphError):
    pass


class ColoringError(PlaneColorError, ValueError):
    pass


class ColorOutOfRange(ColoringError):
    pass


class InvalidPrecoloring(ColoringError):
    pass


class NotInFamily(ColoringError):
    pass


class BadC0Length(ColoringError):
    pass


class ConfigTooLarge(PlaneColorError, ValueError):
    pass


class InvalidConfiguration(PlaneColorError, ValueError):
    pass


class CenterTooLarge(PlaneColorError, ValueError):
    pass


class FormatError(PlaneColorError, ValueError):
    pass


class RotationSyntaxError(FormatError):
    """Malformed rotation-text document; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class TruncatedStream(FormatError):
    pass


class BadHeader(FormatError):
    pass


class BoundTooLarge(PlaneColorError, ValueError):
    pass
