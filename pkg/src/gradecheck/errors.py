"""Exception hierarchy shared by all gradecheck modules."""


class GradecheckError(Exception):
    """Base class for every error raised by this package."""


class RingMismatchError(GradecheckError, ValueError):
    pass


class NotHomogeneousError(GradecheckError, ValueError):
    pass


class ResourceLimitError(GradecheckError, RuntimeError):
    """Raised when a Groebner computation exceeds its pair budget."""


class PreconditionError(GradecheckError, ValueError):
    """An operation was called on input outside its domain."""


class NotHSOPError(PreconditionError):
    pass


class NotCohenMacaulayError(PreconditionError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class ContainmentError(PreconditionError):
    pass


class DegenerateWitnessError(PreconditionError):
    pass


class ConsistencyError(GradecheckError, AssertionError):
    """Two independent computations that must agree did not."""


class ParseError(GradecheckError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
