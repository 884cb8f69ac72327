"""Shared exception types with the CLI exit-code taxonomy attached."""


class ArvError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class ParseError(ArvError):
    """Malformed specification, predicate, trace or serialized automaton."""

    exit_code = 2

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class UnboundVariableError(ArvError):
    """A formula or guard mentions a variable the trace does not carry."""

    exit_code = 3


class UnsupportedFragmentError(ArvError):
    """Operation applied outside its supported language fragment."""

    exit_code = 4
