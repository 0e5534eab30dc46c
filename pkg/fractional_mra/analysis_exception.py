from typing import *


class AnalysisError(ValueError):
    pass


class SpecialAngleError(AnalysisError):
    pass


class AliasError(AnalysisError):
    pass


class CatalogError(AnalysisError):
    pass


class SpecError(AnalysisError):
    pass


class CoverageError(AnalysisError):
    pass


class NotRieszError(AnalysisError):
    pass


class InconsistencyError(AnalysisError):
    pass


class FormatError(AnalysisError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class AnalysisWarning(UserWarning):
    pass


class TruncationWarning(AnalysisWarning):
    pass


class IllConditionedWarning(AnalysisWarning):
    pass
