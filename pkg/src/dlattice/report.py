"""Check results and verification reports.

Every verification routine in this package reports through the same two
shapes: a ``CheckResult`` for a single yes/no question that may carry a
counterexample, and a ``Report`` for a batch of named checks.  Reports
serialize to canonical JSON (sorted keys, no timing data) so that repeated
runs on the same input are byte identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single property check.

    ``ok`` is the verdict; on failure ``reason`` names the violated
    condition and ``witness`` is the smallest offending tuple found.
    """

    ok: bool
    reason: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def passed() -> CheckResult:
    return CheckResult(True)


def failed(reason: str, witness: tuple) -> CheckResult:
    return CheckResult(False, reason, witness)


def jsonable(value):
    """Recursively convert witnesses and counts to JSON-safe values."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, float):
        # The only float this package produces is +inf.
        return "inf" if value == float("inf") else value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    return str(value)


@dataclass
class CheckEntry:
    name: str
    status: str
    witness: object = None
    detail: str = ""
    elapsed: float | None = None  # human output only, never serialized

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "witness": jsonable(self.witness),
            "detail": self.detail,
        }


@dataclass
class Report:
    """Named collection of check outcomes for one verification run."""

    title: str
    entries: list[CheckEntry] = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    def add(self, name: str, ok: bool, witness=None, detail: str = "",
            elapsed: float | None = None) -> None:
        if not ok and witness is None:
            raise ValueError(f"failing entry {name!r} requires a witness")
        status = PASS if ok else FAIL
        self.entries.append(CheckEntry(name, status, witness, detail, elapsed))

    def add_result(self, name: str, result: CheckResult, detail: str = "") -> None:
        if result.ok:
            self.add(name, True, detail=detail)
        else:
            self.add(name, False, witness=(result.reason, result.witness),
                     detail=detail)

    def skip(self, name: str, detail: str = "") -> None:
        self.entries.append(CheckEntry(name, SKIPPED, None, detail))

    def extend(self, other: "Report") -> None:
        self.entries.extend(other.entries)
        for key, value in other.counts.items():
            self.counts[key] = value

    @property
    def ok(self) -> bool:
        return all(e.status != FAIL for e in self.entries)

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if e.status == FAIL]

    def to_obj(self) -> dict:
        return {
            "title": self.title,
            "status": PASS if self.ok else FAIL,
            "counts": {k: jsonable(v) for k, v in sorted(self.counts.items())},
            "entries": [e.to_obj() for e in self.entries],
        }

    def to_json(self) -> str:
        return canonical_json(self.to_obj())

    def render(self, show_elapsed: bool = True) -> str:
        lines = [self.title]
        for entry in self.entries:
            line = f"  [{entry.status}] {entry.name}"
            if entry.detail:
                line += f"  ({entry.detail})"
            if entry.status == FAIL:
                line += f"  witness={jsonable(entry.witness)!r}"
            if show_elapsed and entry.elapsed is not None:
                line += f"  [{entry.elapsed:.3f}s]"
            lines.append(line)
        if self.counts:
            counted = ", ".join(f"{k}={jsonable(v)}" for k, v in sorted(self.counts.items()))
            lines.append(f"  counts: {counted}")
        lines.append(f"  => {PASS if self.ok else FAIL}")
        return "\n".join(lines)


def canonical_json(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, newline end."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
