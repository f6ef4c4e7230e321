"""Verification reports and their text / JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

REPORT_KEYS = (
    "group_name",
    "group_order",
    "prime",
    "exponents",
    "base_subgroup_order",
    "exact_count",
    "residue",
    "passed",
    "elapsed_ms",
)


@dataclass
class VerificationReport:
    group_name: str
    group_order: int
    prime: int
    exponents: list[int]
    base_subgroup_order: int
    exact_count: int
    residue: int
    passed: bool
    elapsed_ms: int
    expected_residue: int = field(default=1, repr=False)

    @classmethod
    def from_count(cls, group_name: str, group_order: int, prime: int, exponents,
                   base_subgroup_order: int, exact_count: int, elapsed_ms: int):
        residue = exact_count % prime
        return cls(group_name, group_order, prime, list(exponents), base_subgroup_order,
                   exact_count, residue, residue == 1, elapsed_ms)

    def to_dict(self) -> dict:
        return {
            "group_name": self.group_name,
            "group_order": self.group_order,
            "prime": self.prime,
            "exponents": list(self.exponents),
            "base_subgroup_order": self.base_subgroup_order,
            # decimal string: counts are unbounded
            "exact_count": str(self.exact_count),
            "residue": self.residue,
            "passed": self.passed,
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        if tuple(d) != REPORT_KEYS:
            raise ValueError(f"unexpected report keys: {list(d)}")
        return cls(
            group_name=d["group_name"],
            group_order=int(d["group_order"]),
            prime=int(d["prime"]),
            exponents=[int(b) for b in d["exponents"]],
            base_subgroup_order=int(d["base_subgroup_order"]),
            exact_count=int(d["exact_count"]),
            residue=int(d["residue"]),
            passed=bool(d["passed"]),
            elapsed_ms=int(d["elapsed_ms"]),
        )


def reports_to_json(reports: Iterable[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def reports_from_json(text: str) -> list[VerificationReport]:
    return [VerificationReport.from_dict(d) for d in json.loads(text)]


_HEADER = ("group", "order", "p", "chain", "base", "count", "residue", "status", "ms")


def format_rows(reports: list[VerificationReport]) -> str:
    """One aligned row per report, with a header line."""
    rows = [_HEADER]
    for r in reports:
        rows.append((
            r.group_name,
            str(r.group_order),
            str(r.prime),
            ",".join(str(b) for b in r.exponents),
            str(r.base_subgroup_order),
            str(r.exact_count),
            str(r.residue),
            "PASS" if r.passed else "FAIL",
            str(r.elapsed_ms),
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(len(_HEADER))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"
