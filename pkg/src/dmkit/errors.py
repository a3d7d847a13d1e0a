"""Exception hierarchy shared by every dmkit module."""


class DMKitError(Exception):
    """Base class for all dmkit errors."""


class RingMismatch(DMKitError, ValueError):
    pass


class NotMember(DMKitError):
    pass


class ZeroIdeal(DMKitError, ValueError):
    pass


class NotSubideal(DMKitError, ValueError):
    pass


class InsufficientUnitPrecision(DMKitError, ValueError):
    pass


class PrecisionExceeded(DMKitError, ValueError):
    pass


class RecurrenceMismatch(DMKitError, ValueError):
    pass


class NotStabilized(DMKitError, ValueError):
    pass


class ContentNotUnit(DMKitError, ValueError):
    pass


class PreconditionFailed(DMKitError, ValueError):
    pass


class ZeroSeries(DMKitError, ValueError):
    pass


class NotVerified(DMKitError):
    """A downstream check needed a verified Dedekind-Mertens report and got another verdict."""

    def __init__(self, report):
        super().__init__(f"dm_check verdict was {report.verdict!r}")
        self.report = report


class ParseError(DMKitError, ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class SchemaError(DMKitError, ValueError):
    def __init__(self, message, path=()):
        where = "/".join(str(p) for p in path) or "<root>"
        super().__init__(f"{where}: {message}")
        self.message = message
        self.path = tuple(path)
