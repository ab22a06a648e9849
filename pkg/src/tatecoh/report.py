"""Check records and deterministic report rendering.

A run produces one RunReport: the command echo plus an ordered list of
checks.  Groups appear only as invariant-factor lists, the one
comparison-safe form.  Rendering is deterministic: the same input files
give byte-identical text and JSON output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .datum import encode_int

STATUSES = ("pass", "fail", "hypothesis-failed", "skipped")


def format_group(invariants: list[int]) -> str:
    """Invariant factors as a readable product, 0 for the trivial group."""
    if not invariants:
        return "0"
    parts = ["Z" if d == 0 else f"Z/{d}" for d in invariants]
    return " x ".join(parts)


@dataclass(frozen=True)
class CheckRecord:
    name: str
    status: str
    groups: dict[str, list[int]] = field(default_factory=dict)
    diagnostics: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


@dataclass
class RunReport:
    command: list[str]
    checks: list[CheckRecord]

    @property
    def verdict(self) -> str:
        statuses = {c.status for c in self.checks}
        if "fail" in statuses:
            return "fail"
        if "hypothesis-failed" in statuses:
            return "hypothesis-failed"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "hypothesis-failed": 3}[self.verdict]

    def to_document(self) -> dict:
        return {
            "command": list(self.command),
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "groups": {k: [encode_int(d) for d in v]
                               for k, v in sorted(c.groups.items())},
                    "diagnostics": c.diagnostics,
                }
                for c in self.checks
            ],
            "verdict": self.verdict,
        }

    def render_json(self) -> str:
        return json.dumps(self.to_document(), indent=2, sort_keys=True) + "\n"

    def render_text(self) -> str:
        lines = ["command: " + " ".join(self.command)]
        for c in self.checks:
            bits = [f"{k} = {format_group(v)}" for k, v in sorted(c.groups.items())]
            if c.diagnostics:
                bits.append(c.diagnostics)
            tail = f"  [{'; '.join(bits)}]" if bits else ""
            lines.append(f"check {c.name}: {c.status}{tail}")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"
