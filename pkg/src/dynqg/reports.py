"""Check records and their aggregation into one report document."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator


@dataclass
class CheckResult:
    check: str
    instance: str
    status: str
    witness: Any = None
    millis: int = 0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_record(self) -> dict:
        record = {
            "check": self.check,
            "instance": self.instance,
            "status": self.status,
            "witness": _plain(self.witness),
            "millis": self.millis,
        }
        if self.detail:
            record["detail"] = _plain(self.detail)
        return record


def _plain(value):
    """Render witnesses as JSON-friendly data (exact numbers become strings)."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if hasattr(value, "to_record"):
        return value.to_record()
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        seq = sorted(value, key=repr) if isinstance(value, (set, frozenset)) else value
        return [_plain(v) for v in seq]
    return str(value)


class Report:
    """Ordered collection of check results for one instance or run."""

    def __init__(self, instance: str = ""):
        self.instance = instance
        self.results: list[CheckResult] = []

    def add(self, check: str, ok: bool, witness=None, millis: int = 0, instance: str | None = None, **detail) -> CheckResult:
        result = CheckResult(check, instance or self.instance, "pass" if ok else "fail", None if ok else witness, millis, detail)
        self.results.append(result)
        return result

    @contextmanager
    def timed(self, check: str, instance: str | None = None) -> Iterator[dict]:
        """Context manager: set box['ok'] (and optionally box['witness']) inside the block."""
        box: dict = {"ok": False, "witness": None}
        start = time.perf_counter()
        yield box
        millis = int((time.perf_counter() - start) * 1000)
        self.add(check, bool(box["ok"]), box.get("witness"), millis, instance, **box.get("detail", {}))

    def extend(self, other: "Report") -> "Report":
        self.results.extend(other.results)
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def get(self, check: str) -> CheckResult:
        for r in self.results:
            if r.check == check:
                return r
        raise KeyError(check)

    def to_records(self) -> list[dict]:
        return [r.to_record() for r in self.results]

    def __repr__(self) -> str:
        ok = sum(r.passed for r in self.results)
        return f"Report({self.instance!r}: {ok}/{len(self.results)} pass)"
