"""Verification reports and their text / JSON renderings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from . import __version__

SCHEMA = "dunkl-fueter-report/1"


@dataclass(frozen=True)
class CheckEntry:
    name: str
    passed: bool
    residual: str = "0"
    detail: str = ""
    expect: str = "zero"  # "nonzero" for negative controls
    case: str = ""


@dataclass
class VerificationReport:
    case_id: str
    entries: list[CheckEntry] = field(default_factory=list)
    rand_seed: int | None = None
    version: str = __version__

    def add(self, name: str, passed: bool, residual: str = "0", detail: str = "", expect: str = "zero") -> CheckEntry:
        entry = CheckEntry(name, bool(passed), residual, detail, expect)
        self.entries.append(entry)
        return entry

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for e in other.entries:
            self.entries.append(CheckEntry(prefix + e.name, e.passed, e.residual, e.detail, e.expect, e.case))

    @property
    def n_pass(self) -> int:
        return sum(e.passed for e in self.entries)

    @property
    def n_fail(self) -> int:
        return len(self.entries) - self.n_pass

    @property
    def ok(self) -> bool:
        return self.n_fail == 0

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "case": self.case_id,
            "engine_version": self.version,
            "rand_seed": self.rand_seed,
            "checks": [
                {
                    "case": e.case or self.case_id,
                    "name": e.name,
                    "status": "PASS" if e.passed else "FAIL",
                    "expect": e.expect,
                    "residual": e.residual,
                    "detail": e.detail,
                }
                for e in self.entries
            ],
            "summary": {"pass": self.n_pass, "fail": self.n_fail},
        }

    def __str__(self) -> str:
        return render_text([self])


def merge(case_id: str, reports: Iterable[VerificationReport], rand_seed: int | None = None) -> VerificationReport:
    """Concatenate per-case reports, tagging each entry with its case id."""
    out = VerificationReport(case_id, rand_seed=rand_seed)
    for r in reports:
        for e in r.entries:
            out.entries.append(CheckEntry(e.name, e.passed, e.residual, e.detail, e.expect, e.case or r.case_id))
    return out


def render_text(reports: Iterable[VerificationReport]) -> str:
    lines = []
    n_pass = n_fail = 0
    for r in reports:
        for e in r.entries:
            status = "PASS" if e.passed else "FAIL"
            line = f"CASE {e.case or r.case_id} CHECK {e.name} {status} residual={e.residual}"
            if e.detail:
                line += f"  # {e.detail}"
            lines.append(line)
        n_pass += r.n_pass
        n_fail += r.n_fail
    lines.append(f"summary: {{pass: {n_pass}, fail: {n_fail}}}")
    return "\n".join(lines) + "\n"


def render_json(reports: Iterable[VerificationReport], rand_seed: int | None = None) -> str:
    reports = list(reports)
    doc = {
        "schema": SCHEMA,
        "engine_version": __version__,
        "rand_seed": rand_seed,
        "cases": [r.to_dict() for r in reports],
        "summary": {"pass": sum(r.n_pass for r in reports), "fail": sum(r.n_fail for r in reports)},
    }
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def emit_report(reports: VerificationReport | Iterable[VerificationReport], fmt: str = "text", rand_seed: int | None = None) -> bytes:
    if isinstance(reports, VerificationReport):
        reports = [reports]
    text = render_json(reports, rand_seed) if fmt == "json" else render_text(reports)
    return text.encode("utf-8")
