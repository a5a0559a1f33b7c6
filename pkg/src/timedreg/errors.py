"""Exception hierarchy shared by every module of the package."""


class TimedRegError(Exception):
    """Base class for all errors raised by timedreg."""


class WordError(TimedRegError, ValueError):
    pass


class EmptyWord(WordError):
    def __init__(self):
        super().__init__("word must contain at least one position")


class NonMonotonic(WordError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"timestamps must strictly increase (position {index})")


class NegativeTime(WordError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"negative timestamp at position {index}")


class DomainMiss(WordError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"mapping is undefined on {value}")


class AutomatonError(TimedRegError, ValueError):
    pass


class DuplicateRule(AutomatonError):
    pass


class UnknownClock(AutomatonError, KeyError):
    pass


class UnknownRegister(AutomatonError, KeyError):
    pass


class PartitionViolation(AutomatonError):
    """Guards of some (state, letter) pair do not partition the valuation space."""

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class AlphabetMismatch(AutomatonError):
    pass


class NotNondeterministic(AutomatonError):
    pass


class ModeUnsupported(AutomatonError):
    pass


class NotABraid(TimedRegError, ValueError):
    pass


class NotATimedBraid(NotABraid):
    pass


class NotADataBraid(NotABraid):
    pass


class NotTrimmed(TimedRegError, ValueError):
    pass


class ParseError(TimedRegError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
