"""Machine-readable reports.

JSON output uses sorted keys.  Apart from ``generated_at`` the report is a
pure function of the configuration, so two runs of the same configuration
give byte-identical documents once that field is dropped.
"""

from __future__ import annotations

import csv
import io
import json
import math
import platform
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .checks import CheckResult
from .config import SuiteConfig

SCHEMA_VERSION = "1.0"

_RECORD_SCHEMA = {
    "type": "object",
    "required": ["suite", "check_id", "anchor", "max_residual", "tolerance", "pass", "detail"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "check_id": {"type": "string"},
        "anchor": {"type": "string"},
        "max_residual": {"type": ["number", "null"]},
        "tolerance": {"type": "number", "minimum": 0},
        "pass": {"type": "boolean"},
        "detail": {"type": "object"},
    },
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "tyurin-rmatrix verification report",
    "type": "object",
    "required": ["schema_version", "overall_pass", "records", "environment", "convention", "config", "generated_at"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "overall_pass": {"type": "boolean"},
        "records": {"type": "array", "items": _RECORD_SCHEMA},
        "environment": {
            "type": "object",
            "required": ["version", "seeds", "config_hash", "numpy", "python"],
            "properties": {
                "version": {"type": "string"},
                "seeds": {"type": "array", "items": {"type": "integer"}},
                "config_hash": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
                "numpy": {"type": "string"},
                "python": {"type": "string"},
            },
        },
        "convention": {
            "type": "object",
            "required": ["bracket_alpha_beta_sign", "bracket_q_p_sign", "r_index_reading", "retried"],
            "properties": {
                "bracket_alpha_beta_sign": {"enum": [1, -1]},
                "bracket_q_p_sign": {"enum": [1, -1]},
                "r_index_reading": {"enum": ["standard", "transposed"]},
                "retried": {"type": "boolean"},
            },
        },
        "config": {"type": "object"},
        "generated_at": {"type": "string"},
    },
}


def _finite_or_none(x):
    return x if isinstance(x, (int, float)) and math.isfinite(x) else None


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _finite_or_none(float(obj))
    return obj


def build_report(cfg: SuiteConfig, results: list[CheckResult], convention: dict,
                 timestamp: str | None = None) -> dict:
    records = [r.record() for r in results]
    return _clean({
        "schema_version": SCHEMA_VERSION,
        "overall_pass": bool(results) and all(r.passed for r in results),
        "records": records,
        "environment": {
            "version": __version__,
            "seeds": list(cfg.seeds),
            "config_hash": cfg.digest(),
            "numpy": np.__version__,
            "python": platform.python_version(),
        },
        "convention": convention,
        "config": cfg.as_dict(),
        "generated_at": timestamp or datetime.now(timezone.utc).isoformat(timespec="seconds"),
    })


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "check_id", "max_residual", "tolerance", "pass"])
    for r in report["records"]:
        res = "" if r["max_residual"] is None else repr(r["max_residual"])
        w.writerow([r["suite"], r["check_id"], res, repr(r["tolerance"]), "pass" if r["pass"] else "FAIL"])
    return buf.getvalue()


def summary_lines(results: list[CheckResult]) -> list[str]:
    out = []
    for r in results:
        flag = "PASS" if r.passed else "FAIL"
        out.append(f"{flag} {r.suite:12s} {r.check_id:28s} {r.max_residual:.3e} <= {r.tolerance:g}")
    return out
