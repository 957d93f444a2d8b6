"""Deterministic synthetic matrix families with unit-norm columns.

Randomness comes from the Philox4x32-10 counter-based generator (via
``numpy.random.Philox``) keyed by ``(seed, stream)``. Raw 64-bit words are
mapped to uniforms in (0, 1] as ``((word >> 11) + 1) * 2**-53`` and to
normals by the Box-Muller transform, pairs consumed in order; matrices
are filled column-major. None of this relies on numpy's distribution
methods, so a fixed seed reproduces the same matrix bit-for-bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import BadSpecError
from .linalg import normalize_columns

FAMILIES = (
    "identity",
    "random_sphere",
    "union_orthobases",
    "duplicated_columns",
    "near_parallel_pair",
    "spiked",
)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    p: int
    seed: int = 0
    params: Mapping[str, float] = field(default_factory=dict)


def _uniforms(seed: int, count: int, stream: int = 0) -> np.ndarray:
    key = np.array([np.uint64(seed), np.uint64(stream)], dtype=np.uint64)
    raw = np.random.Philox(key=key).random_raw(count)
    return ((raw >> np.uint64(11)) + np.uint64(1)).astype(np.float64) * 2.0**-53


def _normals(seed: int, count: int, stream: int = 0) -> np.ndarray:
    pairs = (count + 1) // 2
    u = _uniforms(seed, 2 * pairs, stream)
    radius = np.sqrt(-2.0 * np.log(u[0::2]))
    angle = 2.0 * np.pi * u[1::2]
    z = np.empty(2 * pairs)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:count]


def _gaussian_matrix(seed: int, n: int, p: int, stream: int = 0) -> np.ndarray:
    return _normals(seed, n * p, stream).reshape((n, p), order="F")


def _check_dims(spec: GeneratorSpec) -> None:
    if spec.n < 1 or spec.p < 1:
        raise BadSpecError(f"n and p must be positive, got n={spec.n}, p={spec.p}")


def generate(spec: GeneratorSpec) -> np.ndarray:
    """Materialize the family described by ``spec``.

    Every family yields unit-norm columns; identical specs yield
    bit-identical matrices.
    """
    _check_dims(spec)
    if spec.family == "identity":
        if spec.p > spec.n:
            raise BadSpecError("identity family needs p <= n")
        return np.eye(spec.n, spec.p)
    if spec.family == "random_sphere":
        return normalize_columns(_gaussian_matrix(spec.seed, spec.n, spec.p))
    if spec.family == "union_orthobases":
        if spec.p % spec.n != 0:
            raise BadSpecError("union_orthobases needs p divisible by n")
        blocks = []
        g = _gaussian_matrix(spec.seed, spec.n, spec.p)
        for b in range(spec.p // spec.n):
            q, r = np.linalg.qr(g[:, b * spec.n : (b + 1) * spec.n])
            signs = np.where(np.diag(r) >= 0.0, 1.0, -1.0)
            blocks.append(q * signs)
        return np.hstack(blocks)
    if spec.family == "duplicated_columns":
        distinct = int(spec.params.get("distinct", 1))
        if not 1 <= distinct <= spec.p:
            raise BadSpecError(f"distinct must be in [1, p], got {distinct}")
        base = normalize_columns(_gaussian_matrix(spec.seed, spec.n, distinct))
        return base[:, np.arange(spec.p) % distinct]
    if spec.family == "near_parallel_pair":
        if spec.p < 2 or spec.n < 2:
            raise BadSpecError("near_parallel_pair needs n >= 2 and p >= 2")
        theta = float(spec.params.get("theta", 0.0))
        g = _gaussian_matrix(spec.seed, spec.n, spec.p)
        first = g[:, 0] / np.linalg.norm(g[:, 0])
        ortho = g[:, 1] - (first @ g[:, 1]) * first
        ortho /= np.linalg.norm(ortho)
        out = np.empty((spec.n, spec.p))
        out[:, 0] = first
        out[:, 1] = np.cos(theta) * first + np.sin(theta) * ortho
        if spec.p > 2:
            out[:, 2:] = normalize_columns(g[:, 2:])
        return out
    if spec.family == "spiked":
        strength = float(spec.params.get("strength", 1.0))
        direction = _normals(spec.seed, spec.n, stream=1)
        direction /= np.linalg.norm(direction)
        g = _gaussian_matrix(spec.seed, spec.n, spec.p)
        return normalize_columns(g + strength * direction[:, None])
    raise BadSpecError(f"unknown family {spec.family!r}; have {FAMILIES}")
