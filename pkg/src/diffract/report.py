from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class LawResult:
    law_id: str
    status: str
    checks_run: int = 0
    counterexample: Optional[dict] = None
    reason: Optional[str] = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status == FAIL and self.counterexample is None:
            raise ValueError("a failing law needs a counterexample")
        if self.status == SKIPPED and not self.reason:
            raise ValueError("a skipped law needs a reason")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "law_id": self.law_id,
            "status": self.status,
            "reason": self.reason,
            "checks_run": self.checks_run,
            "counterexample": self.counterexample,
            "info": self.info,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def passed(law_id: str, checks: int, **info) -> LawResult:
    return LawResult(law_id, PASS, checks, info=info)


def failed(law_id: str, checks: int, witness: dict, **info) -> LawResult:
    return LawResult(law_id, FAIL, checks, counterexample=witness, info=info)


def skipped(law_id: str, reason: str) -> LawResult:
    return LawResult(law_id, SKIPPED, 0, reason=reason)


@dataclass
class LawReport:
    instance: dict
    results: list

    @property
    def overall(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    def by_id(self, law_id: str) -> LawResult:
        for r in self.results:
            if r.law_id == law_id:
                return r
        raise KeyError(law_id)

    def to_jsonl(self) -> str:
        return "".join(r.to_json() + "\n" for r in self.results)
