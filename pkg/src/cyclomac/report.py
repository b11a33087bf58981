"""Structured pass/fail reports for the verification commands."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    check: str
    instance: dict
    passed: bool
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"check": self.check, "instance": self.instance,
                "pass": self.passed, "witnesses": self.witnesses}

    def __str__(self) -> str:
        inst = ", ".join(f"{k}={v}" for k, v in self.instance.items())
        status = "pass" if self.passed else "FAIL"
        tail = ""
        if self.witnesses and not self.passed:
            tail = f" [{len(self.witnesses)} witness(es): {self.witnesses[:3]}]"
        return f"{self.check}({inst}): {status}{tail}"
