"""Machine-readable verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__

SCHEMA_VERSION = 1

PASS = "PASS"
FAIL = "FAIL"
NOT_CHECKED = "NOT-CHECKED"
INFO = "INFO"


@dataclass
class VerificationReport:
    kind: str
    instance: dict[str, Any]
    outcome: str
    witness: str = "0"
    stats: dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.outcome in (PASS, INFO, NOT_CHECKED)

    def to_dict(self, *, timing: bool = False) -> dict[str, Any]:
        out = {
            "kind": self.kind,
            "instance": self.instance,
            "outcome": self.outcome,
            "witness": self.witness,
            "stats": self.stats,
        }
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 6)
        return out

    def line(self) -> str:
        inst = ", ".join(f"{k}={v}" for k, v in self.instance.items())
        tail = "" if self.outcome != FAIL else f"  witness: {self.witness}"
        return f"[{self.outcome}] {self.kind}({inst}){tail}"


@dataclass
class ReportDocument:
    command: str
    quiver: dict[str, Any] | None
    quiver_fingerprint: str | None
    reports: list[VerificationReport] = field(default_factory=list)
    provenance: dict[str, Any] = field(default_factory=dict)
    tables: dict[str, Any] = field(default_factory=dict)

    def ok(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_dict(self, *, timing: bool = False) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool": "yshuffle",
            "tool_version": __version__,
            "command": self.command,
            "quiver": self.quiver,
            "quiver_fingerprint": self.quiver_fingerprint,
            "provenance": self.provenance,
            "tables": self.tables,
            "reports": [r.to_dict(timing=timing) for r in self.reports],
            "summary": {
                "total": len(self.reports),
                "failed": sum(1 for r in self.reports if not r.passed),
                "status": PASS if self.ok() else FAIL,
            },
        }

    def to_json(self, *, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing=timing), indent=2, sort_keys=True)
