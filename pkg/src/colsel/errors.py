"""Exception types raised across the package."""


class ColselError(Exception):
    """Base class for all package-specific errors."""


class ZeroColumnError(ColselError):
    """A column has (numerically) zero norm and cannot be normalized."""

    def __init__(self, index: int):
        super().__init__(f"column {index} has near-zero norm")
        self.index = index


class NotSymmetricError(ColselError):
    """Matrix handed to the symmetric eigensolver is not symmetric."""


class NoConvergenceError(ColselError):
    """Eigensolver failed to reduce off-diagonal mass within the sweep budget."""


class PoleEvaluationError(ColselError):
    """Secular function evaluated exactly at a pole with nonzero coupling."""


class BracketFailureError(ColselError):
    """Could not establish a sign-change bracket for a secular root."""


class DegenerateRootError(ColselError):
    """Root/pole gap underflowed while forming eigenvectors."""


class IndexOrderError(ColselError):
    """Eigenvalue rank k exceeds the step count r."""


class ExhaustedError(ColselError):
    """No candidate columns remain to select from."""


class BudgetTooSmallError(ColselError):
    """Input admits no selection budget (fewer than two columns)."""


class ColumnNormViolationError(ColselError):
    """Input columns are not unit-norm and auto-normalization is off."""


class BadSpecError(ColselError):
    """Generator spec violates a family constraint."""


class BadArgumentsError(ColselError):
    """Invalid arguments to a baseline selector."""


class MismatchError(ColselError):
    """Report and matrix disagree on dimensions or indices."""
