"""Exception hierarchy shared by every sublab module."""


class SublabError(Exception):
    """Base class for all errors raised by sublab."""


class DomainNotContained(SublabError):
    pass


class EmptyPattern(SublabError):
    pass


class AlphabetMismatch(SublabError):
    pass


class ResourceLimit(SublabError):
    """An operation would produce more cells or patterns than the configured cap."""


class AnalysisRefused(SublabError):
    """The input is outside the class of substitutions an analysis supports."""


class NotPrimitive(AnalysisRefused):
    pass


class SizeTooSmall(AnalysisRefused):
    pass


class NotSquare(AnalysisRefused):
    pass


class UnknownAperiodicity(AnalysisRefused):
    """The bounded Solomyak search found no radius. This is not a periodicity verdict."""


class PreconditionFailed(AnalysisRefused):
    pass


class NoExtension(SublabError):
    """A language pattern has no margin-1 extension; impossible for primitive input."""


class BoundViolation(SublabError):
    pass


class SideTooSmall(SublabError):
    pass


class NotABlowup(SublabError):
    pass
