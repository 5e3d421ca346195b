"""Exception hierarchy shared by the analysis pipeline."""


class BifsetError(Exception):
    """Base class for every error raised by this package."""


class InputError(BifsetError):
    """The caller supplied something unusable (maps to CLI exit code 1)."""


class AnalysisError(BifsetError):
    """A certified computation could not be completed (CLI exit code 2)."""


class ZeroPolynomial(InputError):
    pass


class ConstantPolynomial(InputError):
    pass


class PointNotAtInfinity(InputError):
    pass


class NotPrimitive(InputError):
    pass


class OverrideTooSmall(InputError):
    pass


class PolySyntaxError(InputError, SyntaxError):
    """Parse failure; ``offset`` is the byte offset into the UTF-8 input."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.msg = message
        self.offset = offset


class DegreeLimitExceeded(InputError):
    pass


class BudgetExhausted(AnalysisError):
    pass


class TangentialIntersection(AnalysisError):
    pass


class DegenerateBand(AnalysisError):
    pass


class ClassifierDisagreement(AnalysisError):
    pass


class DepthInsufficient(AnalysisError):
    pass


class TruncationAmbiguous(AnalysisError):
    pass


class CountMismatch(AnalysisError):
    pass


class MatchingUnresolved(AnalysisError):
    pass


class ShearExhausted(AnalysisError):
    """No shear in the deterministic schedule put a system in generic position."""


class ResolutionTooCoarse(BifsetError):
    pass


class TraceDiverged(BifsetError):
    """An arc trace failed; ``direction`` is +1/-1 when f was seen growing without bound."""

    def __init__(self, message, direction: int = 0):
        super().__init__(message)
        self.direction = direction
