"""Verification reports and their JSON schema.

Reports are deterministic for fixed flags and seed except for ``timings``,
which is kept in its own top-level field so it can be dropped before
comparing two runs.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from typing import Optional

import jsonschema

from .pauliweb import BoundarySignature, PauliWeb

STATUS = ("PASS", "FAIL", "SKIPPED")

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "command", "scheme", "d", "verdict", "checks", "circuit_hash", "diagram_hash",
        "webs", "outcome_supports", "oracle", "details", "timings",
    ],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "scheme": {"type": ["string", "null"]},
        "d": {"type": ["integer", "null"]},
        "verdict": {"enum": ["PASS", "FAIL"]},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "detail"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": list(STATUS)},
                    "detail": {"type": "string"},
                },
            },
        },
        "circuit_hash": {"type": ["string", "null"]},
        "diagram_hash": {"type": ["string", "null"]},
        "webs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "web"],
                "properties": {
                    "name": {"type": "string"},
                    "web": {
                        "type": "object",
                        "required": ["diagram_hash", "labels", "signature"],
                        "properties": {
                            "labels": {
                                "type": "object",
                                "additionalProperties": {"enum": ["I", "X", "Y", "Z"]},
                            }
                        },
                    },
                },
            },
        },
        "outcome_supports": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "string"}},
        },
        "oracle": {
            "type": "object",
            "required": ["trials", "runs", "strategy", "seed", "oracle_skipped"],
            "properties": {
                "trials": {"type": "integer"},
                "runs": {"type": "integer", "minimum": 0},
                "strategy": {"enum": ["exhaustive", "sampled", "skipped", "none"]},
                "seed": {"type": "integer"},
                "oracle_skipped": {"type": "boolean"},
            },
        },
        "details": {"type": "object"},
        "timings": {"type": "object", "additionalProperties": {"type": "number"}},
    },
}


class Report:
    """Accumulates checks; the verdict is PASS iff no check failed."""

    def __init__(self, command: str, scheme: Optional[str] = None, d: Optional[int] = None):
        self.data: dict = {
            "command": command,
            "scheme": scheme,
            "d": d,
            "verdict": "PASS",
            "checks": [],
            "circuit_hash": None,
            "diagram_hash": None,
            "webs": [],
            "outcome_supports": {},
            "oracle": {"trials": 0, "runs": 0, "strategy": "none", "seed": 0, "oracle_skipped": False},
            "details": {},
            "timings": {},
        }

    def check(self, name: str, ok: Optional[bool], detail: str = "") -> bool:
        """Record a check; ``ok=None`` means skipped."""
        status = "SKIPPED" if ok is None else ("PASS" if ok else "FAIL")
        self.data["checks"].append({"name": name, "status": status, "detail": str(detail)})
        return bool(ok) or ok is None

    def web(self, name: str, web: PauliWeb, sig: Optional[BoundarySignature] = None) -> None:
        self.data["webs"].append({"name": name, "web": web.to_json(sig)})
        if sig is not None:
            self.support(name, sig.measurement_support)

    def support(self, name: str, outcomes) -> None:
        self.data["outcome_supports"][name] = list(outcomes)

    def detail(self, key: str, value) -> None:
        self.data["details"][key] = value

    def hashes(self, circuit: str, diagram: str) -> None:
        self.data["circuit_hash"] = circuit
        self.data["diagram_hash"] = diagram

    def oracle(self, trials: int, runs: int, strategy: str, seed: int) -> None:
        self.data["oracle"] = {
            "trials": trials,
            "runs": runs,
            "strategy": strategy,
            "seed": seed,
            "oracle_skipped": strategy == "skipped",
        }

    @contextmanager
    def timed(self, phase: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.data["timings"][phase] = round(time.perf_counter() - t0, 6)

    def finish(self) -> "Report":
        failed = any(c["status"] == "FAIL" for c in self.data["checks"])
        self.data["verdict"] = "FAIL" if failed else "PASS"
        return self

    # -- views -------------------------------------------------------------

    @property
    def verdict(self) -> str:
        return self.data["verdict"]

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def failures(self) -> list[dict]:
        return [c for c in self.data["checks"] if c["status"] == "FAIL"]

    def status(self, name: str) -> Optional[str]:
        for c in self.data["checks"]:
            if c["name"] == name:
                return c["status"]
        return None

    def to_json(self) -> str:
        validate_report(self.data)
        return json.dumps(self.data, indent=2, sort_keys=False) + "\n"

    def summary(self) -> str:
        head = f"{self.data['command']} {self.data['scheme'] or ''} d={self.data['d']}: {self.verdict}"
        lines = [head.replace("  ", " ")]
        for c in self.failures():
            lines.append(f"  FAIL {c['name']}: {c['detail']}")
        return "\n".join(lines)


def validate_report(data: dict) -> None:
    jsonschema.validate(data, REPORT_SCHEMA)


def strip_timings(text: str) -> dict:
    data = json.loads(text)
    data.pop("timings", None)
    return data
