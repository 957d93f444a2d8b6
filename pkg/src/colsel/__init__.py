"""colsel: extract a provably well-conditioned column submatrix.

Greedy spectral column selection with per-step eigenvalue envelopes, a
secular-equation fast path for spectrum updates, synthetic test-matrix
generators, naive baselines and a report-emitting CLI.
"""

__version__ = "0.1.0"

from . import kernels
from .baselines import BaselineResult, first_r_select, random_subset_select
from .errors import (
    BadArgumentsError,
    BadSpecError,
    BracketFailureError,
    BudgetTooSmallError,
    ColselError,
    ColumnNormViolationError,
    DegenerateRootError,
    ExhaustedError,
    IndexOrderError,
    MismatchError,
    NoConvergenceError,
    NotSymmetricError,
    PoleEvaluationError,
    ZeroColumnError,
)
from .generators import FAMILIES, GeneratorSpec, generate
from .linalg import (
    SymEig,
    gram,
    normalize_columns,
    operator_norm_sq,
    sym_eig,
)
from .secular import (
    ArrowheadSpectrum,
    append_column_spectrum,
    arrowhead_eigenvectors,
    check_interlacing,
    couplings,
    secular_eval,
)
from .selector import (
    BudgetParams,
    EnvelopeCheck,
    SelectionReport,
    SelectionState,
    SelectorConfig,
    StepScore,
    compute_budget,
    envelope_bounds,
    run_selection,
    score_column,
    select_next,
    verify_average_bound,
    verify_envelopes,
)

__all__ = [
    "__version__",
    "kernels",
    "ArrowheadSpectrum",
    "BadArgumentsError",
    "BadSpecError",
    "BaselineResult",
    "BracketFailureError",
    "BudgetParams",
    "BudgetTooSmallError",
    "ColselError",
    "ColumnNormViolationError",
    "DegenerateRootError",
    "EnvelopeCheck",
    "ExhaustedError",
    "FAMILIES",
    "GeneratorSpec",
    "IndexOrderError",
    "MismatchError",
    "NoConvergenceError",
    "NotSymmetricError",
    "PoleEvaluationError",
    "SelectionReport",
    "SelectionState",
    "SelectorConfig",
    "StepScore",
    "SymEig",
    "ZeroColumnError",
    "append_column_spectrum",
    "arrowhead_eigenvectors",
    "check_interlacing",
    "compute_budget",
    "couplings",
    "envelope_bounds",
    "first_r_select",
    "generate",
    "gram",
    "normalize_columns",
    "operator_norm_sq",
    "random_subset_select",
    "run_selection",
    "score_column",
    "secular_eval",
    "select_next",
    "sym_eig",
    "verify_average_bound",
    "verify_envelopes",
]
