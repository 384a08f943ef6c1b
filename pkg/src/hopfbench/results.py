"""Check-result containers shared by all verification passes."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

__all__ = ["CheckResult", "Stopwatch", "summarize", "invert_expected_failure"]


@dataclass
class CheckResult:
    """Outcome of one named verification pass.

    status is "pass", "fail" or "skipped"; mode records how the claim
    was covered ("exhaustive", "generators", "sampled", "skipped");
    witness holds a rendered counterexample for failures.
    """

    name: str
    status: str
    mode: str
    cases_checked: int = 0
    witness: Optional[str] = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_dict(self, include_elapsed: bool = False) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "mode": self.mode,
            "cases_checked": self.cases_checked,
            "witness": self.witness,
        }
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 6)
        return out

    def line(self) -> str:
        flag = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[self.status]
        extra = f"  [{self.mode}, {self.cases_checked} cases]"
        msg = f"{flag:4s}  {self.name}{extra}"
        if self.witness:
            msg += f"\n      witness: {self.witness}"
        return msg


class Stopwatch:
    """Tiny helper so every check reports wall time the same way."""

    __slots__ = ("t0",)

    def __init__(self):
        self.t0 = time.perf_counter()

    def read(self) -> float:
        return time.perf_counter() - self.t0


def summarize(results: list) -> tuple[int, int, int]:
    """(passed, failed, skipped) counts."""
    p = sum(1 for r in results if r.status == "pass")
    f = sum(1 for r in results if r.status == "fail")
    s = sum(1 for r in results if r.status == "skipped")
    return p, f, s


def invert_expected_failure(res: CheckResult, name: str) -> CheckResult:
    """Wrap a check whose *failure* is the claim being verified.

    The wrapped result passes exactly when the inner check found a
    counterexample; the counterexample is kept as the witness so the
    failure it certifies can be replayed.
    """
    if res.status == "fail":
        return CheckResult(name, "pass", res.mode, res.cases_checked,
                           res.witness, res.elapsed)
    if res.status == "pass":
        return CheckResult(name, "fail", res.mode, res.cases_checked,
                           "expected a counterexample; none found",
                           res.elapsed)
    return CheckResult(name, res.status, res.mode, res.cases_checked,
                       res.witness, res.elapsed)
