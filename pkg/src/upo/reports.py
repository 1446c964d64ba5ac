"""Shared report records for every audit and checker in the library.

A report line names the law it checked, gives a three-valued verdict, and
carries a replayable witness on failure.  Witnesses are always built from
lexicographically least search results so identical inputs give identical
reports.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNKNOWN = "unknown"


@dataclass
class Report:
    """Outcome of one named check."""

    check: str
    law: str
    verdict: Verdict
    witness: Any = None
    detail: str = ""
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_json(self) -> dict[str, Any]:
        # elapsed is intentionally dropped: JSON output must be byte-stable
        out: dict[str, Any] = {
            "check": self.check,
            "law": self.law,
            "verdict": self.verdict.value,
        }
        if self.witness is not None:
            out["witness"] = _plain(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out

    def render_text(self) -> str:
        mark = {"pass": "PASS", "fail": "FAIL", "unknown": "UNKNOWN"}[self.verdict.value]
        line = f"[{mark}] {self.check} ({self.law})"
        if self.detail:
            line += f" - {self.detail}"
        if self.witness is not None and self.verdict is not Verdict.PASS:
            line += f" witness={_plain(self.witness)!r}"
        if self.elapsed:
            line += f" [{self.elapsed:.3f}s]"
        return line


def _plain(x: Any) -> Any:
    """Strip library objects down to JSON-stable data."""
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, frozenset):
        return sorted((_plain(v) for v in x), key=repr)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return str(x)


def passed(check: str, law: str, detail: str = "") -> Report:
    return Report(check, law, Verdict.PASS, detail=detail)


def failed(check: str, law: str, witness: Any, detail: str = "") -> Report:
    return Report(check, law, Verdict.FAIL, witness=witness, detail=detail)


def unknown(check: str, law: str, detail: str = "") -> Report:
    return Report(check, law, Verdict.UNKNOWN, detail=detail)


@dataclass
class ReportSet:
    """An ordered collection of reports with an aggregate verdict."""

    reports: list[Report] = field(default_factory=list)

    def add(self, r: Report) -> Report:
        self.reports.append(r)
        return r

    def extend(self, rs: "ReportSet | list[Report]") -> None:
        self.reports.extend(rs.reports if isinstance(rs, ReportSet) else rs)

    def __iter__(self) -> Iterator[Report]:
        return iter(self.reports)

    def __len__(self) -> int:
        return len(self.reports)

    @property
    def ok(self) -> bool:
        return all(r.verdict is not Verdict.FAIL for r in self.reports)

    @property
    def all_pass(self) -> bool:
        return all(r.verdict is Verdict.PASS for r in self.reports)

    def verdict(self) -> Verdict:
        if any(r.verdict is Verdict.FAIL for r in self.reports):
            return Verdict.FAIL
        if any(r.verdict is Verdict.UNKNOWN for r in self.reports):
            return Verdict.UNKNOWN
        return Verdict.PASS

    def sorted(self) -> "ReportSet":
        return ReportSet(sorted(self.reports, key=lambda r: (r.check, r.law)))

    def to_json(self) -> str:
        return json.dumps([r.to_json() for r in self.sorted()], indent=2, sort_keys=True)

    def render_text(self) -> str:
        return "\n".join(r.render_text() for r in self.sorted())

    def failures(self) -> list[Report]:
        return [r for r in self.reports if r.verdict is Verdict.FAIL]


@contextmanager
def timed(report: Report) -> Iterator[Report]:
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed = time.perf_counter() - start
