"""Exception hierarchy shared by every module."""


class XDecompError(Exception):
    pass


class DegenerateSide(XDecompError):
    """A cut side carries no demand, or all of it."""


class TooLarge(XDecompError):
    """Instance exceeds the brute-force cap."""


class NotATree(XDecompError):
    pass


class Disconnected(XDecompError):
    pass


class AllZeroDemand(XDecompError):
    pass


class PromiseViolated(XDecompError):
    """Diagnostic: a caller-supplied promise was found false by the oracle."""


class InputError(XDecompError):
    """Malformed input file. Carries the offending line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLine(InputError):
    pass


class SelfLoop(InputError):
    pass


class NonPositiveWeight(InputError):
    pass


class OutOfRange(InputError):
    pass


class NegativeDemand(InputError):
    pass


class DuplicateEntry(InputError):
    pass
