"""Exception hierarchy shared by every mirrornet module."""


class MirrorNetError(ValueError):
    """Base class for all errors raised by mirrornet."""


class InvalidParameterError(MirrorNetError):
    pass


class DomainError(MirrorNetError):
    pass


class SingularityError(MirrorNetError):
    pass


class UnsupportedShapeError(MirrorNetError):
    pass


class InvalidProfileError(MirrorNetError):
    pass


class InvalidTimeError(MirrorNetError):
    pass


class InvalidResponseError(MirrorNetError):
    pass


class InvalidLabelError(MirrorNetError):
    pass


class EmptyPoolError(MirrorNetError):
    pass


class UnsupportedDeadlineError(MirrorNetError):
    pass


class ZeroPhaseError(MirrorNetError):
    pass


class StorageError(MirrorNetError):
    """The memorial file could not be read or written."""


class IntegrityError(MirrorNetError):
    """A record would violate the memorial's id or consistency rules."""


class DecodeError(MirrorNetError):
    """A memorial line could not be decoded.

    ``lineno`` is 1-based.
    """

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class NotFoundError(MirrorNetError):
    pass


class ScenarioError(MirrorNetError):
    """Scenario file failed validation; ``field`` is a dotted path into the document."""

    def __init__(self, message: str, field: str | None = None, lineno: int | None = None):
        where = []
        if lineno is not None:
            where.append(f"line {lineno}")
        if field:
            where.append(field)
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.field = field
        self.lineno = lineno
