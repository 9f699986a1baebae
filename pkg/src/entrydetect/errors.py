"""Exception hierarchy.

Two families: :class:`ConfigError` for bad arguments or hyperparameters
(the caller asked for something impossible) and :class:`DataError` for
problems with the data or model documents themselves. The CLI maps the
first to exit code 1 and the second to exit code 2.
"""


class EntryDetectError(Exception):
    pass


class ConfigError(EntryDetectError, ValueError):
    pass


class DataError(EntryDetectError, ValueError):
    pass


# --- configuration / precondition errors ---

class NonpositiveRadius(ConfigError):
    pass


class InvalidSpec(ConfigError):
    pass


class BadK(ConfigError):
    pass


class BadHyperparameter(ConfigError):
    pass


class BadWindow(ConfigError):
    pass


class IndexOutOfRange(ConfigError, IndexError):
    pass


# --- data errors ---

class MalformedHeader(DataError):
    pass


class RowParseError(DataError):
    def __init__(self, line, column, reason=""):
        self.line = line
        self.column = column
        msg = f"line {line}, column {column!r}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class RangeViolation(DataError):
    def __init__(self, line, field, value):
        self.line = line
        self.field = field
        self.value = value
        super().__init__(f"line {line}: {field}={value!r} outside the allowed range")


class InvalidTrace(DataError):
    pass


class EmptyDataset(DataError):
    pass


class DimensionMismatch(DataError):
    pass


class SingleClassDataset(DataError):
    pass


class TooFewMinoritySamples(DataError):
    pass


class UnknownAlgo(DataError):
    pass


class VersionMismatch(DataError):
    pass


class MalformedDocument(DataError):
    pass


class NoEntranceDetected(DataError):
    pass
