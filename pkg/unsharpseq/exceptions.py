class UnsharpError(Exception):
    pass


class NonHermitian(UnsharpError):
    pass


class ComplexStateUnsupported(UnsharpError):
    pass


class NotNormalized(UnsharpError):
    pass


class ImproperState(UnsharpError):
    pass


class InvalidSharpness(UnsharpError):
    pass


class ImpossibleOutcome(UnsharpError):
    pass


class DegenerateState(UnsharpError):
    pass


class HistoryTooLong(UnsharpError):
    pass


class InvalidSchedule(UnsharpError):
    pass


class OutOfRange(UnsharpError):
    pass


class EmptyCell(UnsharpError):
    pass


class InvalidParameter(UnsharpError):
    pass


class InvalidFormat(UnsharpError):
    pass


class InvalidSetting(UnsharpError, IndexError):
    pass


class ChecksFailed(UnsharpError):
    pass
