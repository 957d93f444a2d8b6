"""Greedy selection of a well-conditioned column subset.

Given a matrix with unit-norm columns and a conditioning target
``epsilon``, the selector derives a step budget from the inequality

    R * ln(R) <= epsilon^2 / (4 * (1 + epsilon)) * p / opnorm_sq,

then repeatedly appends the candidate column whose weighted projection
score onto the current eigendirections is smallest. Every step records
the full spectrum of the growing Gram matrix and checks it against
per-rank envelopes of width proportional to

    envelope_scale = sqrt((1 + epsilon) * opnorm_sq * ln(R) / p),

which certify that all singular values of the extracted submatrix stay
inside [1 - epsilon, 1 + epsilon].
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    BudgetTooSmallError,
    ColumnNormViolationError,
    ExhaustedError,
    IndexOrderError,
    MismatchError,
)
from .linalg import (
    EMPTY_EIG,
    SymEig,
    as_matrix,
    column_norms,
    gram,
    normalize_columns,
    operator_norm_sq,
    sym_eig,
)
from .secular import append_column_spectrum, check_interlacing, couplings

ENVELOPE_TOL = 1e-8
AVERAGE_BOUND_TOL = 1e-10


@dataclass(frozen=True)
class BudgetParams:
    """Scalar inputs that drive one selection run."""

    epsilon: float
    p: int
    opnorm_sq: float
    budget: int
    envelope_scale: float


@dataclass(frozen=True)
class SelectorConfig:
    auto_normalize: bool = False
    fast_spectral_path: bool = False
    cert_tol: float = 1e-8
    unit_norm_tol: float = 1e-8
    refresh_every: int = 16
    drift_tol: float = 1e-8


@dataclass
class SelectionState:
    """Mutable loop state: chosen indices, remaining candidates and the
    eigendecomposition of the current Gram matrix."""

    selected: list[int]
    remaining: list[int]
    spectral: SymEig

    @property
    def step(self) -> int:
        return len(self.selected)


@dataclass(frozen=True)
class StepScore:
    step: int
    index: int
    score: float
    mean_remaining: float


@dataclass(frozen=True)
class EnvelopeCheck:
    r: int
    k: int
    value: float
    lower: float
    upper: float
    margin_lower: float
    margin_upper: float
    ok: bool


@dataclass(frozen=True)
class AverageBoundViolation:
    step: int
    score: float
    bound: float


@dataclass(frozen=True)
class SelectionReport:
    """Machine-checkable witness of one selection run."""

    params: BudgetParams
    n: int
    cert_tol: float
    fast_spectral_path: bool
    auto_normalize: bool
    selected: list[int]
    trajectory: list[list[float]]
    scores: list[StepScore]
    envelope_checks: list[EnvelopeCheck]
    interlacing_checks: list[bool]
    final_extremes: tuple[float, float]
    certified: bool


def compute_budget(epsilon: float, p: int, opnorm_sq: float) -> BudgetParams:
    """Largest step count R with R*ln(R) below the budget bound, capped at
    floor(p/2), together with the envelope scale it implies."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must be in (0,1)")
    if opnorm_sq < 1.0 - 1e-9:
        raise ValueError(f"opnorm_sq must be >= 1 for unit columns, got {opnorm_sq}")
    p = int(p)
    cap = p // 2
    if cap < 1:
        raise BudgetTooSmallError(f"need at least 2 columns, got {p}")
    rhs = epsilon * epsilon * p / (4.0 * (1.0 + epsilon) * opnorm_sq)
    budget = 1
    while budget + 1 <= cap and (budget + 1) * math.log(budget + 1) <= rhs:
        budget += 1
    scale = math.sqrt((1.0 + epsilon) * opnorm_sq * math.log(budget) / p)
    return BudgetParams(float(epsilon), p, float(opnorm_sq), budget, scale)


def envelope_bounds(k: int, r: int, envelope_scale: float) -> tuple[float, float]:
    """Per-rank eigenvalue envelope after r steps: the k-th eigenvalue must
    lie in [1 - scale*(r+k-1)/sqrt(r), 1 + scale*(2r-k)/sqrt(r)]."""
    if k < 1 or r < 1:
        raise ValueError("k and r must be positive")
    if k > r:
        raise IndexOrderError(f"rank k={k} exceeds step count r={r}")
    root = math.sqrt(r)
    lower = 1.0 - envelope_scale * (r + k - 1) / root
    upper = 1.0 + envelope_scale * (2 * r - k) / root
    return lower, upper


def score_column(x: np.ndarray, spectral: SymEig, selected_columns: np.ndarray) -> float:
    """Sum over ranks k of (v_k^T Y^T x)^2 / k; zero iff x is orthogonal to
    the span of the selected columns."""
    r = spectral.values.shape[0]
    if r == 0:
        return 0.0
    proj = spectral.vectors.T @ (selected_columns.T @ x)
    return float(np.sum(proj * proj / np.arange(1, r + 1)))


def _candidate_scores(state: SelectionState, x: np.ndarray) -> np.ndarray:
    r = state.step
    m = len(state.remaining)
    if r == 0:
        return np.zeros(m)
    y = x[:, state.selected]
    proj = state.spectral.vectors.T @ (y.T @ x[:, state.remaining])
    return np.sum(proj * proj / np.arange(1, r + 1)[:, None], axis=0)


def select_next(state: SelectionState, x: np.ndarray) -> int:
    """Remaining index with minimal score, smallest index on ties. The
    argmin is automatically at or below the average over the candidates."""
    if not state.remaining:
        raise ExhaustedError("no remaining candidate columns")
    scores = _candidate_scores(state, x)
    return state.remaining[int(np.argmin(scores))]


def _secular_update(state: SelectionState, x: np.ndarray, chosen: int) -> SymEig:
    y_prev = x[:, state.selected]
    c = couplings(state.spectral, y_prev, x[:, chosen])
    spec = append_column_spectrum(state.spectral.values, c, want_vectors=True)
    u = spec.vectors_in_eigenbasis
    vectors = np.vstack([state.spectral.vectors @ u[1:, :], u[0:1, :]])
    return SymEig(spec.roots, vectors)


def run_selection(x, epsilon: float, config: SelectorConfig | None = None) -> SelectionReport:
    """Run the full greedy selection and certification loop.

    Columns must be unit-norm within ``config.unit_norm_tol`` unless
    ``auto_normalize`` is set. Executes exactly the budgeted number of
    steps; the report is certified iff every envelope check passed and the
    final spectrum lies in [1 - epsilon - cert_tol, 1 + epsilon + cert_tol].
    """
    config = config or SelectorConfig()
    if not 0.0 < config.cert_tol <= 1e-3:
        raise ValueError("cert_tol must be in (0, 1e-3]")
    x = as_matrix(x, "input matrix")
    n, p = x.shape
    norms = column_norms(x)
    if config.auto_normalize:
        x = normalize_columns(x)
    else:
        worst = int(np.argmax(np.abs(norms - 1.0)))
        if abs(norms[worst] - 1.0) > config.unit_norm_tol:
            raise ColumnNormViolationError(
                f"column {worst} has norm {norms[worst]:.12g}; "
                "pass auto_normalize to rescale"
            )
    params = compute_budget(epsilon, p, operator_norm_sq(x))
    state = SelectionState([], list(range(p)), EMPTY_EIG)
    trajectory: list[list[float]] = []
    scores: list[StepScore] = []
    env_checks: list[EnvelopeCheck] = []
    interlacing: list[bool] = []
    since_refresh = 0
    for _ in range(params.budget):
        cand = _candidate_scores(state, x)
        j = int(np.argmin(cand))
        chosen = state.remaining[j]
        scores.append(
            StepScore(
                step=state.step + 1,
                index=chosen,
                score=float(cand[j]),
                mean_remaining=float(cand.mean()),
            )
        )
        old = state.spectral
        use_fast = (
            config.fast_spectral_path
            and state.step > 0
            and since_refresh + 1 < config.refresh_every
        )
        if use_fast:
            spectral = _secular_update(state, x, chosen)
            v = spectral.vectors
            drift = float(np.max(np.abs(v.T @ v - np.eye(v.shape[1]))))
            if drift > config.drift_tol:
                use_fast = False
        state.selected.append(chosen)
        state.remaining.remove(chosen)
        if use_fast:
            since_refresh += 1
        else:
            spectral = sym_eig(gram(x[:, state.selected]))
            since_refresh = 0
        state.spectral = spectral
        r = state.step
        for k in range(1, r + 1):
            lower, upper = envelope_bounds(k, r, params.envelope_scale)
            val = float(spectral.values[k - 1])
            env_checks.append(
                EnvelopeCheck(
                    r=r,
                    k=k,
                    value=val,
                    lower=lower,
                    upper=upper,
                    margin_lower=val - lower,
                    margin_upper=upper - val,
                    ok=(lower - ENVELOPE_TOL <= val <= upper + ENVELOPE_TOL),
                )
            )
        interlacing.append(check_interlacing(old.values, spectral.values))
        trajectory.append([float(v) for v in spectral.values])
    last = trajectory[-1]
    lam_max, lam_min = last[0], last[-1]
    certified = (
        all(c.ok for c in env_checks)
        and lam_min >= 1.0 - epsilon - config.cert_tol
        and lam_max <= 1.0 + epsilon + config.cert_tol
    )
    return SelectionReport(
        params=params,
        n=n,
        cert_tol=config.cert_tol,
        fast_spectral_path=config.fast_spectral_path,
        auto_normalize=config.auto_normalize,
        selected=list(state.selected),
        trajectory=trajectory,
        scores=scores,
        envelope_checks=env_checks,
        interlacing_checks=interlacing,
        final_extremes=(lam_min, lam_max),
        certified=certified,
    )


def verify_envelopes(report: SelectionReport) -> list[EnvelopeCheck]:
    """Recheck every trajectory eigenvalue against its envelope; returns the
    violations (empty when the guarantee holds numerically)."""
    scale = report.params.envelope_scale
    out = []
    for i, spectrum in enumerate(report.trajectory):
        r = i + 1
        for k in range(1, r + 1):
            lower, upper = envelope_bounds(k, r, scale)
            val = spectrum[k - 1]
            if not lower - ENVELOPE_TOL <= val <= upper + ENVELOPE_TOL:
                out.append(
                    EnvelopeCheck(
                        r=r,
                        k=k,
                        value=val,
                        lower=lower,
                        upper=upper,
                        margin_lower=val - lower,
                        margin_upper=upper - val,
                        ok=False,
                    )
                )
    return out


def verify_average_bound(report: SelectionReport, x) -> list[AverageBoundViolation]:
    """Recompute each step's chosen score from scratch and compare it with
    lambda_max * opnorm_sq * H_r / (p - r), H_r the r-th harmonic number."""
    x = as_matrix(x)
    n, p = x.shape
    if p != report.params.p or n != report.n:
        raise MismatchError(
            f"matrix is {n}x{p} but report describes {report.n}x{report.params.p}"
        )
    opnorm = operator_norm_sq(x)
    out = []
    sel = report.selected
    for t in range(2, len(sel) + 1):
        r = t - 1
        y = x[:, sel[:r]]
        spectral = sym_eig(gram(y))
        lhs = score_column(x[:, sel[r]], spectral, y)
        harmonic = float(np.sum(1.0 / np.arange(1, r + 1)))
        rhs = float(spectral.values[0]) * opnorm * harmonic / (p - r)
        if lhs > rhs + AVERAGE_BOUND_TOL:
            out.append(AverageBoundViolation(step=t, score=lhs, bound=rhs))
    return out


def recompute_trajectory(x, selected: list[int]) -> list[list[float]]:
    """Dense from-scratch spectra of every selection prefix."""
    x = as_matrix(x)
    out = []
    for r in range(1, len(selected) + 1):
        vals = sym_eig(gram(x[:, selected[:r]])).values
        out.append([float(v) for v in vals])
    return out


def rebuild_report(report: SelectionReport, x) -> SelectionReport:
    """Clone a report with its trajectory, extremes and certification
    recomputed densely from the matrix; used by independent verification."""
    x = as_matrix(x)
    n, p = x.shape
    if p != report.params.p or n != report.n:
        raise MismatchError(
            f"matrix is {n}x{p} but report describes {report.n}x{report.params.p}"
        )
    sel = report.selected
    if len(set(sel)) != len(sel):
        raise MismatchError("selected indices contain duplicates")
    if sel and (min(sel) < 0 or max(sel) >= p):
        raise MismatchError("selected indices out of range")
    trajectory = recompute_trajectory(x, sel)
    scale = report.params.envelope_scale
    env_checks = []
    for i, spectrum in enumerate(trajectory):
        r = i + 1
        for k in range(1, r + 1):
            lower, upper = envelope_bounds(k, r, scale)
            val = spectrum[k - 1]
            env_checks.append(
                EnvelopeCheck(
                    r=r,
                    k=k,
                    value=val,
                    lower=lower,
                    upper=upper,
                    margin_lower=val - lower,
                    margin_upper=upper - val,
                    ok=(lower - ENVELOPE_TOL <= val <= upper + ENVELOPE_TOL),
                )
            )
    interlacing = [True] if trajectory else []
    for i in range(1, len(trajectory)):
        interlacing.append(
            check_interlacing(np.array(trajectory[i - 1]), np.array(trajectory[i]))
        )
    last = trajectory[-1] if trajectory else [1.0]
    lam_max, lam_min = last[0], last[-1]
    eps = report.params.epsilon
    certified = (
        all(c.ok for c in env_checks)
        and lam_min >= 1.0 - eps - report.cert_tol
        and lam_max <= 1.0 + eps + report.cert_tol
    )
    return replace(
        report,
        trajectory=trajectory,
        envelope_checks=env_checks,
        interlacing_checks=interlacing,
        final_extremes=(lam_min, lam_max),
        certified=certified,
    )
