from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one identity check; failures carry the first discrepancy."""

    name: str
    anchor: str
    ok: bool
    detail: str = ""
    data: dict = field(default_factory=dict, compare=False)

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def __bool__(self):
        return self.ok
