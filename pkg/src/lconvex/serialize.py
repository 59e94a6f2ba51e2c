"""CSV and JSON encodings of a :class:`~lconvex.algorithms.Trace`.

Floats are written with 17 significant digits, so parsing the CSV gives back
the exact in-memory values.
"""

from __future__ import annotations

import csv
import io
import json

from .algorithms import IterateRecord, Trace
from .lspace import LFunc

CSV_FIELDS = ("k", "x", "f_x", "lambda_a", "c_k", "step_div", "subproblem_value")


def _g17(v: float) -> str:
    return format(v, ".17g")


def _row(r: IterateRecord) -> dict:
    return {
        "k": r.k,
        "x": r.x,
        "f_x": r.f_x,
        "lambda_a": r.lambda_a,
        "c_k": r.c_k,
        "step_div": r.step_div,
        "subproblem_value": r.subproblem_value,
    }


def trace_to_csv(trace: Trace) -> str:
    lines = [",".join(CSV_FIELDS)]
    for r in trace:
        row = _row(r)
        lines.append(",".join([str(row["k"])] + [_g17(row[k]) for k in CSV_FIELDS[1:]]))
    return "\n".join(lines) + "\n"


def trace_from_csv(text: str, method: str = "") -> Trace:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_FIELDS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    records = [
        IterateRecord(
            k=int(row["k"]),
            x=float(row["x"]),
            f_x=float(row["f_x"]),
            lam=LFunc(float(row["lambda_a"]), 0.0),
            c_k=float(row["c_k"]),
            step_div=float(row["step_div"]),
            subproblem_value=float(row["subproblem_value"]),
        )
        for row in reader
    ]
    return Trace(method, tuple(records))


def trace_to_json(trace: Trace, **meta) -> str:
    doc = dict(meta)
    doc["method"] = trace.method
    doc["stop_reason"] = trace.stop_reason
    doc["records"] = [_row(r) for r in trace]
    return json.dumps(doc, indent=2) + "\n"
