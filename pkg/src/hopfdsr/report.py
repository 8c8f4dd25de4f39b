"""Verification reports shared by every checking routine."""
from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    id: str
    passed: bool
    effective_order: int | None = None
    residual_nonzero_terms: int = 0
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "effective_order": self.effective_order,
            "residual_nonzero_terms": self.residual_nonzero_terms,
        }


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, id: str, passed: bool, effective_order=None, nonzero: int = 0, detail: str = ""):
        self.checks.append(CheckResult(id, bool(passed), effective_order, nonzero, detail))
        return self.checks[-1]

    def add_residual(self, id: str, residual, detail: str = ""):
        """Record a residual element/tensor; it passes iff no term survives."""
        n = residual.nterms()
        text = detail or ("" if n == 0 else _short(residual))
        return self.add(id, n == 0, residual.order, n, text)

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(CheckResult(prefix + c.id, c.passed, c.effective_order,
                                           c.residual_nonzero_terms, c.detail))
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def overall(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, id: str) -> CheckResult:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    def to_dict(self) -> dict:
        return {"checks": [c.to_dict() for c in self.checks], "overall": self.overall}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            order = "exact" if c.effective_order is None else f"h^{c.effective_order}"
            extra = f"  ({c.detail})" if c.detail and not c.passed else ""
            lines.append(f"{c.status.upper():4s}  {c.id}  [{order}]{extra}")
        return lines


def _short(obj, limit: int = 160) -> str:
    text = str(obj)
    return text if len(text) <= limit else text[: limit - 3] + "..."
