"""Pass/fail reports for certificate verification."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerifyReport:
    """Accumulates named checks; failures carry the first bad series order."""

    checks: list = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "", order: int | None = None):
        self.checks.append({"name": name, "ok": bool(ok), "detail": detail,
                            "order": order})

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    @property
    def first_bad_order(self) -> int | None:
        orders = [c["order"] for c in self.checks
                  if not c["ok"] and c["order"] is not None]
        return min(orders) if orders else None

    def to_json(self) -> dict:
        return {"ok": self.ok, "first_bad_order": self.first_bad_order,
                "checks": self.checks}

    def lines(self):
        for c in self.checks:
            mark = "pass" if c["ok"] else "FAIL"
            extra = f" [{c['detail']}]" if c["detail"] else ""
            where = f" at order {c['order']}" if c["order"] is not None else ""
            yield f"{mark}: {c['name']}{where}{extra}"
