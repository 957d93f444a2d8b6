"""File formats: CSV and MatrixMarket matrices, JSON/CSV reports.

Matrices load from either plain CSV (one matrix row per line,
comma-separated decimals) or MatrixMarket array format
(``%%MatrixMarket matrix array real general``); the reader sniffs the
header line. Reports serialize to JSON with every float printed at 17
significant digits so identical runs produce byte-identical files.
Non-finite floats (the +inf condition-number marker) serialize as the
strings "inf"/"-inf"/"nan".
"""
from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from . import __version__
from .linalg import as_matrix
from .selector import (
    AverageBoundViolation,
    BudgetParams,
    EnvelopeCheck,
    SelectionReport,
    StepScore,
)

REPORT_SCHEMA = 1


# ---------------------------------------------------------------- matrices

def read_csv_matrix(path: str) -> np.ndarray:
    m = np.loadtxt(path, delimiter=",", ndmin=2, dtype=np.float64)
    return as_matrix(m, f"matrix from {path}")


def write_csv_matrix(path: str, x) -> None:
    np.savetxt(path, as_matrix(x), delimiter=",", fmt="%.17g")


def read_matrix_market(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().lower().split()
        if header[:1] != ["%%matrixmarket"] or len(header) < 5:
            raise ValueError(f"{path}: not a MatrixMarket header")
        if header[1:3] != ["matrix", "array"] or header[4] != "general":
            raise ValueError(f"{path}: only 'matrix array <real|integer> general' is supported")
        if header[3] not in ("real", "integer"):
            raise ValueError(f"{path}: unsupported field type {header[3]!r}")
        size = None
        values: list[float] = []
        for line in fh:
            stripped = line.strip()
            if not stripped or stripped.startswith("%"):
                continue
            if size is None:
                parts = stripped.split()
                if len(parts) != 2:
                    raise ValueError(f"{path}: bad size line {stripped!r}")
                size = (int(parts[0]), int(parts[1]))
                continue
            values.extend(float(tok) for tok in stripped.split())
    if size is None:
        raise ValueError(f"{path}: missing size line")
    n, p = size
    if len(values) != n * p:
        raise ValueError(f"{path}: expected {n * p} entries, found {len(values)}")
    return as_matrix(np.array(values).reshape((n, p), order="F"), f"matrix from {path}")


def write_matrix_market(path: str, x) -> None:
    x = as_matrix(x)
    n, p = x.shape
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("%%MatrixMarket matrix array real general\n")
        fh.write(f"{n} {p}\n")
        for j in range(p):
            for i in range(n):
                fh.write(format(x[i, j], ".17g") + "\n")


def load_matrix(path: str) -> np.ndarray:
    """Sniff the format from the first line and load."""
    with open(path, "r", encoding="utf-8") as fh:
        first = fh.readline()
    if first.lstrip().lower().startswith("%%matrixmarket"):
        return read_matrix_market(path)
    return read_csv_matrix(path)


# ------------------------------------------------------------------ reports

def _fmt(value: Any, indent: int) -> str:
    pad = " " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(
            f"{pad}  {json.dumps(str(k))}: {_fmt(v, indent + 2)}" for k, v in value.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        seq = list(value)
        if not seq:
            return "[]"
        flat = all(not isinstance(v, (dict, list, tuple)) for v in seq)
        if flat:
            return "[" + ", ".join(_fmt(v, indent) for v in seq) + "]"
        items = ",\n".join(f"{pad}  {_fmt(v, indent + 2)}" for v in seq)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        f = float(value)
        if math.isnan(f):
            return '"nan"'
        if math.isinf(f):
            return '"inf"' if f > 0 else '"-inf"'
        return format(f, ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value)!r}")


def dumps_json(obj: Any) -> str:
    """Deterministic JSON with 17-significant-digit floats."""
    return _fmt(obj, 0) + "\n"


def report_to_dict(report: SelectionReport) -> dict:
    from . import kernels

    return {
        "params": {
            "epsilon": report.params.epsilon,
            "p": report.params.p,
            "n": report.n,
            "opnorm_sq": report.params.opnorm_sq,
            "budget": report.params.budget,
            "envelope_scale": report.params.envelope_scale,
            "cert_tol": report.cert_tol,
            "fast_spectral_path": report.fast_spectral_path,
            "auto_normalize": report.auto_normalize,
        },
        "selected": list(report.selected),
        "trajectory": [list(row) for row in report.trajectory],
        "scores": [
            {
                "step": s.step,
                "index": s.index,
                "score": s.score,
                "mean_remaining": s.mean_remaining,
            }
            for s in report.scores
        ],
        "envelope_checks": [
            {
                "r": c.r,
                "k": c.k,
                "value": c.value,
                "lower": c.lower,
                "upper": c.upper,
                "margin_lower": c.margin_lower,
                "margin_upper": c.margin_upper,
                "ok": c.ok,
            }
            for c in report.envelope_checks
        ],
        "interlacing_checks": list(report.interlacing_checks),
        "final_extremes": {
            "lambda_min": report.final_extremes[0],
            "lambda_max": report.final_extremes[1],
        },
        "certified": report.certified,
        "versions": {
            "package": __version__,
            "report_schema": REPORT_SCHEMA,
            "kernels": kernels.active_backend(),
        },
    }


def report_from_dict(data: dict) -> SelectionReport:
    try:
        params = data["params"]
        budget = BudgetParams(
            epsilon=float(params["epsilon"]),
            p=int(params["p"]),
            opnorm_sq=float(params["opnorm_sq"]),
            budget=int(params["budget"]),
            envelope_scale=float(params["envelope_scale"]),
        )
        return SelectionReport(
            params=budget,
            n=int(params["n"]),
            cert_tol=float(params["cert_tol"]),
            fast_spectral_path=bool(params["fast_spectral_path"]),
            auto_normalize=bool(params["auto_normalize"]),
            selected=[int(i) for i in data["selected"]],
            trajectory=[[float(v) for v in row] for row in data["trajectory"]],
            scores=[
                StepScore(
                    step=int(s["step"]),
                    index=int(s["index"]),
                    score=float(s["score"]),
                    mean_remaining=float(s["mean_remaining"]),
                )
                for s in data["scores"]
            ],
            envelope_checks=[
                EnvelopeCheck(
                    r=int(c["r"]),
                    k=int(c["k"]),
                    value=float(c["value"]),
                    lower=float(c["lower"]),
                    upper=float(c["upper"]),
                    margin_lower=float(c["margin_lower"]),
                    margin_upper=float(c["margin_upper"]),
                    ok=bool(c["ok"]),
                )
                for c in data["envelope_checks"]
            ],
            interlacing_checks=[bool(b) for b in data["interlacing_checks"]],
            final_extremes=(
                float(data["final_extremes"]["lambda_min"]),
                float(data["final_extremes"]["lambda_max"]),
            ),
            certified=bool(data["certified"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"invalid report structure: {exc}") from exc


def report_to_json(report: SelectionReport) -> str:
    return dumps_json(report_to_dict(report))


def report_to_csv(report: SelectionReport) -> str:
    """Plot-ready long-format view: one row per (step, rank) with the
    eigenvalue and its envelope; scalars ride along as '#' comments."""
    lines = [
        "# selection report (csv view; the json format is the complete record)",
        f"# epsilon={report.params.epsilon:.17g} p={report.params.p} n={report.n}",
        f"# opnorm_sq={report.params.opnorm_sq:.17g} budget={report.params.budget}"
        f" envelope_scale={report.params.envelope_scale:.17g}",
        "# selected=" + ";".join(str(i) for i in report.selected),
        f"# lambda_min={report.final_extremes[0]:.17g}"
        f" lambda_max={report.final_extremes[1]:.17g}"
        f" certified={str(report.certified).lower()}",
        "r,k,value,lower,upper,ok",
    ]
    for c in report.envelope_checks:
        lines.append(
            f"{c.r},{c.k},{c.value:.17g},{c.lower:.17g},{c.upper:.17g},"
            + str(c.ok).lower()
        )
    return "\n".join(lines) + "\n"


def load_report(path: str) -> SelectionReport:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not a JSON report ({exc})") from exc
    return report_from_dict(data)


def violations_summary(
    env: list[EnvelopeCheck], avg: list[AverageBoundViolation]
) -> list[str]:
    out = [
        f"envelope violation at k={c.k}, r={c.r}: value {c.value:.12g} "
        f"outside [{c.lower:.12g}, {c.upper:.12g}]"
        for c in env
    ]
    out.extend(
        f"average-score bound violated at step {v.step}: "
        f"score {v.score:.12g} > bound {v.bound:.12g}"
        for v in avg
    )
    return out
