"""One record per check, printable as text or as JSON lines."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class CheckRecord:
    name: str
    expected: object
    got: object
    passed: bool
    parameters: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, default=str)

    def to_text(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        status = "PASS" if self.passed else "FAIL"
        head = f"{status} {self.name}" + (f" [{params}]" if params else "")
        return f"{head}: expected {self.expected}, got {self.got}"


def check(name: str, expected, got, **parameters) -> CheckRecord:
    return CheckRecord(name, expected, got, expected == got, parameters)


def render(records: list[CheckRecord], fmt: str = "text") -> str:
    if fmt == "json":
        return "".join(r.to_json() + "\n" for r in records)
    lines = [r.to_text() for r in records]
    failed = sum(not r.passed for r in records)
    lines.append(f"{len(records) - failed}/{len(records)} checks passed")
    return "\n".join(lines) + "\n"
