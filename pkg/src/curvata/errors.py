"""Exception hierarchy shared by every curvata module."""


class CurvataError(Exception):
    """Base class; the CLI maps these to exit code 2."""


class InputError(CurvataError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyInput(InputError):
    pass


class DuplicateVertexInSimplex(ParseError):
    pass


class LabelTooSmall(ParseError):
    pass


class LoopEdge(ParseError):
    pass


class ConflictingLabel(ParseError):
    pass


class SimplexNotFound(CurvataError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class VertexNotFound(SimplexNotFound):
    pass


class FaceNotFound(SimplexNotFound):
    pass


class UnknownEdge(SimplexNotFound):
    pass


class InvalidLengthFunction(CurvataError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations[:5]))


class ZeroLengthEdge(CurvataError):
    pass


class Disconnected(CurvataError):
    pass


class NotASurface(CurvataError):
    def __init__(self, message, where=None):
        self.where = where
        super().__init__(message)


class NotADisk(CurvataError):
    pass


class NoDiagonal(CurvataError):
    pass


class NotFlag(CurvataError):
    pass


class PreconditionFailed(CurvataError):
    pass


class TargetNotLocallyLarge(CurvataError):
    pass


class ReductionStuck(CurvataError):
    pass


class TooFewInteriorVertices(CurvataError):
    pass


class BoundaryChord(CurvataError):
    pass


class HypothesisViolated(CurvataError):
    pass


class InternalInvariantViolation(CurvataError):
    pass


class MixedPresentation(CurvataError):
    pass


class RadiusTooSmall(CurvataError):
    pass


class ResourceLimit(CurvataError):
    pass


class MissingExpectation(CurvataError):
    pass
