"""Naive reference selectors: uniform random subsets and the first R
columns. They give the comparison rows for the bench command."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadArgumentsError
from .linalg import as_matrix, gram, sym_eig


@dataclass(frozen=True)
class BaselineResult:
    method: str
    selected: list[int]
    extremes: tuple[float, float]
    condition_number: float


def condition_number(lam_min: float, lam_max: float) -> float:
    return math.inf if lam_min <= 0.0 else lam_max / lam_min


def _extremes(x: np.ndarray, indices: list[int]) -> tuple[float, float]:
    values = sym_eig(gram(x[:, indices])).values
    return float(values[-1]), float(values[0])


def random_subset_select(x, budget: int, seed: int, trials: int) -> list[BaselineResult]:
    """Draw ``trials`` uniform subsets of ``budget`` distinct columns.

    Each trial uses its own Philox stream keyed by (seed, trial), so
    results are reproducible and trials are independent.
    """
    x = as_matrix(x)
    p = x.shape[1]
    if not 1 <= budget <= p:
        raise BadArgumentsError(f"budget must be in [1, {p}], got {budget}")
    if trials < 1:
        raise BadArgumentsError(f"trials must be >= 1, got {trials}")
    out = []
    for trial in range(trials):
        key = np.array([np.uint64(seed), np.uint64(trial)], dtype=np.uint64)
        raw = np.random.Philox(key=key).random_raw(p)
        indices = sorted(int(i) for i in np.argsort(raw, kind="stable")[:budget])
        lam_min, lam_max = _extremes(x, indices)
        out.append(
            BaselineResult(
                method="uniform_random",
                selected=indices,
                extremes=(lam_min, lam_max),
                condition_number=condition_number(lam_min, lam_max),
            )
        )
    return out


def first_r_select(x, budget: int) -> BaselineResult:
    """The first ``budget`` columns, in order."""
    x = as_matrix(x)
    p = x.shape[1]
    if not 1 <= budget <= p:
        raise BadArgumentsError(f"budget must be in [1, {p}], got {budget}")
    indices = list(range(budget))
    lam_min, lam_max = _extremes(x, indices)
    return BaselineResult(
        method="first_R",
        selected=indices,
        extremes=(lam_min, lam_max),
        condition_number=condition_number(lam_min, lam_max),
    )
