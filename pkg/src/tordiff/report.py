"""Scenario reports and their JSON / text serializations."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

REPORT_VERSION = 1
STATUSES = ("pass", "fail", "unknown")


@dataclass
class Check:
    id: str
    status: str
    witness: str
    anchor: str
    seconds: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad check status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "witness": self.witness, "anchor": self.anchor}


@dataclass
class Report:
    scenario: str
    params: dict
    checks: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.checks and all(c.passed for c in self.checks):
            return "pass"
        if any(c.status == "fail" for c in self.checks) or not self.checks:
            return "fail"
        return "unknown"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def check(self, id: str) -> Check:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    def as_dict(self, timing: bool = True) -> dict:
        stats = dict(self.stats)
        if not timing:
            stats.pop("elapsed_ms", None)
        return {
            "version": REPORT_VERSION,
            "scenario": self.scenario,
            "params": dict(self.params),
            "status": self.status,
            "checks": [c.as_dict() for c in self.checks],
            "stats": stats,
            "notes": list(self.notes),
        }


def to_json(report: Report, timing: bool = True) -> str:
    return json.dumps(report.as_dict(timing), sort_keys=True, indent=2, ensure_ascii=False)


def to_text(report: Report) -> str:
    params = ", ".join(f"{k}={v}" for k, v in sorted(report.params.items()))
    lines = [f"scenario {report.scenario} ({params}): {report.status.upper()}"]
    w_id = max((len(c.id) for c in report.checks), default=2)
    for c in report.checks:
        lines.append(f"  [{c.status:^7}] {c.id:<{w_id}}  {c.witness}")
        lines.append(f"  {'':9} {'':<{w_id}}  ({c.anchor})")
    if report.stats:
        lines.append("  stats: " + ", ".join(f"{k}={v}" for k, v in sorted(report.stats.items())))
    for n in report.notes:
        lines.append(f"  note: {n}")
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (to_json(report) + "\n").encode("utf-8")
    if fmt == "text":
        return to_text(report).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["version", "scenario", "params", "status", "checks", "stats", "notes"],
    "properties": {
        "version": {"const": REPORT_VERSION},
        "scenario": {"type": "string"},
        "params": {"type": "object"},
        "status": {"enum": list(STATUSES)},
        "checks": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "status", "witness", "anchor"],
                "properties": {
                    "id": {"type": "string"},
                    "status": {"enum": list(STATUSES)},
                    "witness": {"type": "string"},
                    "anchor": {"type": "string", "minLength": 1},
                },
            },
        },
        "stats": {"type": "object"},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}
