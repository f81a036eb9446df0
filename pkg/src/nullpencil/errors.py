"""Exception hierarchy shared across the package."""


class NullPencilError(Exception):
    """Base class for every error raised by this package."""


class ExprSyntaxError(NullPencilError, ValueError):
    """Malformed expression text. ``offset`` is a byte offset into the source."""

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


class UnknownIdentifierError(ExprSyntaxError):
    """Identifier that is neither an allowed variable, a function, nor ``pi``."""


class DomainError(NullPencilError, ArithmeticError):
    """Evaluation left the domain of an elementary function."""


class CurveError(NullPencilError, ValueError):
    """The curve violates a standing assumption (nullity, k1 != 0, frame)."""


class PreconditionError(NullPencilError):
    """A check was requested whose precondition does not hold."""


class SceneError(NullPencilError, ValueError):
    """Scene document failed validation. ``path`` is a JSON pointer."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path
