"""Verdict reports printed by the CLI: prose lines plus a key=value block."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt(v) for v in value)
    if isinstance(value, dict):
        return ",".join(f"{k}:{_fmt(v)}" for k, v in sorted(value.items()))
    return str(value)


@dataclass
class Report:
    title: str
    ok: bool = True
    entries: dict[str, Any] = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)

    def add(self, key: str, value: Any) -> None:
        self.entries[key] = value

    def note(self, line: str) -> None:
        self.lines.append(line)

    def fail(self, line: str) -> None:
        self.ok = False
        self.lines.append("FAIL: " + line)

    def render_text(self) -> str:
        out = [f"== {self.title} ==", *self.lines]
        out.append("status: " + ("ok" if self.ok else "FAILED"))
        return "\n".join(out)

    def render_kv(self) -> str:
        kv = {"report": self.title.replace(" ", "_"), "ok": self.ok, **self.entries}
        return "\n".join(f"{k}={_fmt(v)}" for k, v in kv.items())

    def render(self) -> str:
        return self.render_text() + "\n\n" + self.render_kv() + "\n"
