"""Check results and the JSON report document."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = 1


@dataclass
class Report:
    claim: str
    args: dict = field(default_factory=dict)
    passed: bool = True
    witness: str | None = None
    millis: float | None = None

    def row(self, timings: bool = False) -> dict:
        out = {"claim": self.claim, "args": self.args, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        out["millis"] = round(self.millis, 3) if timings and self.millis is not None else None
        return out


def summarize(reports: list[Report]) -> dict:
    failed = [r for r in reports if not r.passed]
    return {"total": len(reports), "passed": len(reports) - len(failed), "failed": len(failed)}


def document(command: str, config: dict, reports: list[Report], timings: bool = False) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "config": config,
        "rows": [r.row(timings) for r in reports],
        "summary": summarize(reports),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
