"""Exploit PoC validation for MiniSol contracts.

Thin dict-in/dict-out wrappers over the native module, which speaks JSON
strings at the boundary.
"""

import json

from ._core import (
    __version__,
    ConfigInvalid,
    InputInvalid,
    MiniSolParseError,
    SchemaError,
    analyze_trace_json,
    canonical_source,
    derive_paths_json,
    validate_report_json,
)

__all__ = [
    "__version__",
    "ConfigInvalid",
    "InputInvalid",
    "MiniSolParseError",
    "SchemaError",
    "analyze_trace",
    "canonical_source",
    "derive_paths",
    "validate_report",
]


def validate_report(source, report, config=None):
    """Validate one vulnerability report against a contract source string."""
    config_text = json.dumps(config) if config is not None else ""
    return json.loads(validate_report_json(source, json.dumps(report), config_text))


def analyze_trace(trace_lines, vuln, deltas=None):
    """Classify an execution trace given as JSONL text or a list of events."""
    if isinstance(trace_lines, (list, tuple)):
        trace_lines = "\n".join(json.dumps(ev) for ev in trace_lines)
    deltas_text = json.dumps(deltas) if deltas is not None else ""
    return json.loads(analyze_trace_json(trace_lines, vuln, deltas_text))


def derive_paths(source, report):
    """Vulnerability paths the validator would explore for this report."""
    return json.loads(derive_paths_json(source, json.dumps(report)))
