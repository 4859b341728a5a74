"""Check records and their JSON / CSV serialisation."""

from __future__ import annotations

import csv
import json
import math
import os
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    anchor: str
    residual: float
    tolerance: float
    wall_time: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    @property
    def passed(self) -> bool:
        # NaN compares False, so a NaN residual fails
        return bool(self.residual <= self.tolerance)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "id": self.check_id,
            "anchor": self.anchor,
            "residual": _json_float(self.residual),
            "tolerance": self.tolerance,
            "passed": self.passed,
            "details": {k: _json_float(v) for k, v in sorted(self.details.items())},
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.check_id}: residual={self.residual:.3e} tol={self.tolerance:.1e}"


def _json_float(x):
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, (int, float)) or hasattr(x, "__float__"):
        x = float(x)
        if math.isnan(x) or math.isinf(x):
            return repr(x)
        return x
    return x


def timed_check(check_id: str, anchor: str, tolerance: float, fn) -> CheckReport:
    """Run ``fn`` and wrap its result in a :class:`CheckReport`.

    ``fn`` returns either a residual or ``(residual, details)``.
    """
    start = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - start
    details = {}
    if isinstance(out, tuple):
        out, details = out
    return CheckReport(check_id, anchor, float(out), tolerance, elapsed, dict(details))


def report_payload(suite: str, reports, config: dict, seed: int, timing: bool = True) -> dict:
    reports = list(reports)
    return {
        "schema": SCHEMA_VERSION,
        "suite": suite,
        "seed": seed,
        "config": config,
        "passed": all(r.passed for r in reports),
        "n_checks": len(reports),
        "n_failed": sum(not r.passed for r in reports),
        "checks": [r.to_dict(timing=timing) for r in reports],
    }


def write_json_atomic(payload: dict, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path
