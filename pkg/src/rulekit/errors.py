"""Exception hierarchy shared by every rulekit module."""


class RulekitError(Exception):
    """Base class for all errors raised by rulekit."""


class DataError(RulekitError):
    """Problem with the input data itself (bad file, unobservable measure)."""


class ParseError(DataError):
    """Malformed input text. ``line`` is 1-based, or None when not applicable."""

    def __init__(self, message, line=None):
        self.line = line
        self.reason = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedLine(ParseError):
    pass


class DuplicateItemInTransaction(ParseError):
    pass


class DuplicateRespondent(ParseError):
    pass


class UnknownItem(DataError):
    def __init__(self, code):
        self.code = code
        super().__init__(f"unknown item code {code!r}")


class EmptyDatabase(DataError):
    def __init__(self, message="database has no transactions"):
        super().__init__(message)


class UndefinedMeasure(DataError):
    """A measure whose denominator is zero for the given rule."""


class UndefinedConfidence(UndefinedMeasure):
    pass


class UndefinedCosine(UndefinedMeasure):
    pass


class UndefinedLift(UndefinedMeasure):
    pass


class UnknownMeasure(RulekitError, ValueError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown measure {name!r}")


class UnsupportedFormat(RulekitError, ValueError):
    def __init__(self, fmt, where=""):
        self.format = fmt
        suffix = f" for {where}" if where else ""
        super().__init__(f"unsupported format {fmt!r}{suffix}")


class OutOfRange(RulekitError, ValueError):
    pass


class InvalidSpec(DataError):
    pass


class UniverseTooLarge(RulekitError, ValueError):
    pass
