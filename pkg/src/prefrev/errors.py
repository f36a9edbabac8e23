"""Exception hierarchy shared across the package."""


class PrefrevError(Exception):
    """Base class for every error raised by this package."""


class ConstructionError(PrefrevError, ValueError):
    """A value object (order, feasible set, domain, scf) failed validation."""


class ArgumentError(PrefrevError, ValueError):
    """An operation was called with arguments outside its contract."""


class ResourceGuardError(PrefrevError):
    """A requested computation exceeds the configured enumeration guards."""


class ParseError(PrefrevError, ValueError):
    """A textual input (order notation, domain file, scf file) is malformed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
