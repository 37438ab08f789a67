"""Verdicts and machine-readable reports.

A :class:`Check` is one named verdict.  Failing checks carry a witness whose
``residual`` is the printed form of a nonzero polynomial on ``chart``, so a
reader can re-parse it and confirm the failure independently.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .poly import Poly

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass(frozen=True)
class Check:
    key: str
    verdict: str
    witness: dict | None = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FAIL and not self.witness:
            raise ValueError(f"failing check {self.key!r} needs a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        out = {"check": self.key, "verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.info:
            out["info"] = self.info
        return out


def witness(residual: Poly, **context) -> dict:
    """Witness payload for a nonzero residual polynomial."""
    out = {k: v for k, v in context.items()}
    out["chart"] = list(residual.chart.names)
    out["residual"] = str(residual)
    return out


def passed(key: str, **info) -> Check:
    return Check(key, PASS, None, info)


def failed(key: str, wit: dict, **info) -> Check:
    return Check(key, FAIL, wit, info)


def first_nonzero(labelled: Iterable[tuple[str, Poly]]):
    """First ``(label, poly)`` whose poly is nonzero, else ``None``."""
    for label, p in labelled:
        if not p.is_zero():
            return label, p
    return None


def all_checks(checks: Iterable[Check]) -> bool:
    return all(c.passed for c in checks)


def to_jsonl(checks: Iterable[Check], summary: dict | None = None) -> str:
    lines = [json.dumps(c.to_dict(), sort_keys=True) for c in sorted(checks, key=lambda c: c.key)]
    if summary is not None:
        lines.append(json.dumps({"summary": summary}, sort_keys=True))
    return "\n".join(lines) + "\n"


def to_text(checks: Iterable[Check], summary: dict | None = None) -> str:
    lines = []
    for c in sorted(checks, key=lambda c: c.key):
        line = f"{c.verdict.upper():7s} {c.key}"
        if c.witness:
            line += f"  witness: {json.dumps(c.witness, sort_keys=True)}"
        lines.append(line)
    if summary is not None:
        lines.append(f"summary: {json.dumps(summary, sort_keys=True)}")
    return "\n".join(lines) + "\n"
