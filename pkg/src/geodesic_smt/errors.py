"""Exception hierarchy.

``HypothesisError`` subclasses flag inputs that violate a standing
assumption of the theorems being checked (the CLI maps them to exit 2).
"""


class GeodesicSMTError(Exception):
    pass


class ParseError(GeodesicSMTError, ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class NotDivisible(GeodesicSMTError, ArithmeticError):
    pass


class HypothesisError(GeodesicSMTError):
    pass


class SingularSystem(HypothesisError):
    pass


class DegreeMismatch(HypothesisError, ValueError):
    pass


class SamplingFailure(GeodesicSMTError):
    pass


class ZeroCurve(HypothesisError):
    pass


class ChartDegenerate(HypothesisError):
    pass


class PolarLocusCurve(HypothesisError):
    pass


class ZeroPullback(HypothesisError):
    pass


class QuadratureFailure(GeodesicSMTError):
    pass


class NearSingularRadius(GeodesicSMTError):
    pass


class MissingGrowthIndex(HypothesisError):
    pass


class DegenerateCurve(HypothesisError):
    pass


class CurvesIdentical(HypothesisError):
    pass


class SharingViolated(HypothesisError):
    pass


class NotInLinearSystem(HypothesisError):
    pass
