# maninsigma/report.py
"""
RunReport: the body every CLI command prints.

- checks are hard pass/fail items; any failure gives exit status 2
- discrepancies and warnings never change the exit status
- tables are pandas DataFrames rendered with a fixed float format
- the body holds no timestamps, so identical inputs give identical bytes
"""

import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

EXIT_OK = 0
EXIT_EVALUATION = 1
EXIT_VALIDATION = 2
EXIT_INPUT = 3

_STATUS = {
    EXIT_OK: "ok",
    EXIT_EVALUATION: "evaluation error",
    EXIT_VALIDATION: "validation failure",
    EXIT_INPUT: "input error",
}


def fmt(v):
    return f"{v:.12g}"


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""


@dataclass(frozen=True)
class Discrepancy:
    entry: str
    i: int
    j: int
    point: Tuple[float, ...]
    published: float
    computed: float

    @property
    def delta(self):
        return abs(self.published - self.computed)


@dataclass
class RunReport:
    command: str
    inputs_digest: str = ""
    checks: List[CheckResult] = field(default_factory=list)
    discrepancies: List[Discrepancy] = field(default_factory=list)
    values: Dict[str, object] = field(default_factory=dict)
    tables: List[Tuple[str, pd.DataFrame]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    error: Optional[str] = None
    error_code: int = EXIT_OK

    def check(self, name, value, tolerance, detail=""):
        ok = bool(np.isfinite(value) and value <= tolerance)
        self.checks.append(CheckResult(name, ok, float(value), float(tolerance), detail))
        return ok

    def require(self, name, passed, value=0.0, tolerance=0.0, detail=""):
        self.checks.append(CheckResult(name, bool(passed), float(value), float(tolerance), detail))
        return bool(passed)

    def add_table(self, title, frame: pd.DataFrame):
        self.tables.append((title, frame))

    def fail(self, exc):
        self.error = str(exc)
        self.error_code = int(getattr(exc, "exit_code", EXIT_EVALUATION))

    @property
    def exit_status(self):
        if self.error is not None:
            return self.error_code
        if any(not c.passed for c in self.checks):
            return EXIT_VALIDATION
        return EXIT_OK

    # ---------------------
    # Rendering
    # ---------------------
    def render_text(self):
        lines = [
            f"command: {self.command}",
            f"inputs: {self.inputs_digest}",
            f"status: {_STATUS[self.exit_status]} (exit {self.exit_status})",
        ]
        if self.error is not None:
            lines.append(f"error: {self.error}")
        for key in sorted(self.values):
            lines.append(f"{key}: {_text_value(self.values[key])}")
        if self.checks:
            frame = pd.DataFrame(
                [
                    {
                        "check": c.name,
                        "result": "pass" if c.passed else "FAIL",
                        "value": c.value,
                        "tolerance": c.tolerance,
                        "detail": c.detail,
                    }
                    for c in self.checks
                ]
            )
            lines += ["", "checks", frame.to_string(index=False, float_format=fmt)]
        for title, frame in self.tables:
            lines += ["", title, frame.to_string(float_format=fmt)]
        if self.discrepancies:
            frame = pd.DataFrame(
                [
                    {
                        "entry": d.entry,
                        "ij": f"{d.i}{d.j}",
                        "point": ",".join(fmt(x) for x in d.point),
                        "published": d.published,
                        "computed": d.computed,
                        "delta": d.delta,
                    }
                    for d in self.discrepancies
                ]
            )
            lines += ["", f"discrepancies ({len(self.discrepancies)})", frame.to_string(index=False, float_format=fmt)]
        if self.warnings:
            lines += ["", "warnings"] + [f"- {w}" for w in self.warnings]
        return "\n".join(lines) + "\n"

    def to_dict(self):
        """Plain JSON types only; NaN and inf become None."""
        return _jsonable({
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "exit_status": self.exit_status,
            "status": _STATUS[self.exit_status],
            "error": self.error,
            "values": self.values,
            "checks": [c.__dict__ for c in self.checks],
            "tables": {title: frame.to_dict(orient="split") for title, frame in self.tables},
            "discrepancies": [dict(d.__dict__, delta=d.delta) for d in self.discrepancies],
            "warnings": list(self.warnings),
        })

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.generic):
        return _jsonable(obj.item())
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if obj is None or isinstance(obj, (str, bool, int, float)):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _text_value(v):
    if isinstance(v, float):
        return fmt(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    return str(v)


def matrix_frame(m, row_label="i", col_label="j"):
    """Square matrix as a DataFrame with 1-based labels."""
    m = np.asarray(m, dtype=float)
    labels = list(range(1, m.shape[0] + 1))
    frame = pd.DataFrame(m, index=labels, columns=list(range(1, m.shape[1] + 1)))
    frame.index.name = f"{row_label}\\{col_label}"
    return frame
