"""Exception hierarchy shared by every tracelogic module."""


class TraceLogicError(Exception):
    """Base class for all errors raised by tracelogic."""


class EmptyTrace(TraceLogicError, ValueError):
    pass


class EmptyCycle(TraceLogicError, ValueError):
    pass


class TermTypeError(TraceLogicError, TypeError):
    """Operand kinds do not fit the operator (e.g. adding booleans).

    Deliberately distinct from an undefined value: undefinedness is part of
    the semantics, a kind mismatch is a user mistake.
    """


class IndexOutOfRange(TraceLogicError, IndexError):
    pass


class NotInfinite(TraceLogicError, ValueError):
    pass


class NotFinite(TraceLogicError, ValueError):
    pass


class UnboundVariable(TraceLogicError, KeyError):
    pass


class UnsupportedConstruct(TraceLogicError, ValueError):
    pass


class FormatError(TraceLogicError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BadLassoStart(TraceLogicError, ValueError):
    pass


class BadParameters(TraceLogicError, ValueError):
    pass
