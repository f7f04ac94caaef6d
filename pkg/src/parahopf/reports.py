"""Check reports shared by every verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

PASS = "pass"
FAIL = "fail"
PASS_ON_WINDOW = "pass-on-window"


@dataclass
class CheckReport:
    name: str
    status: str = PASS
    witness: Optional[dict] = None
    window: Optional[str] = None
    detail: Optional[str] = None
    subchecks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    @classmethod
    def combine(cls, name, subchecks, detail=None):
        subchecks = list(subchecks)
        rep = cls(name, detail=detail, subchecks=subchecks)
        windows = [s.window for s in subchecks if s.status == PASS_ON_WINDOW and s.window]
        failed = [s for s in subchecks if s.status == FAIL]
        if failed:
            rep.status = FAIL
            rep.witness = dict(failed[0].witness or {}, check=failed[0].name)
        elif any(s.status == PASS_ON_WINDOW for s in subchecks):
            rep.status = PASS_ON_WINDOW
            rep.window = "; ".join(sorted(set(windows))) or None
        return rep

    def first_failure(self):
        """Deepest failing check along the first failing branch."""
        if self.status != FAIL:
            return None
        for s in self.subchecks:
            if s.status == FAIL:
                return s.first_failure()
        return self

    def find(self, name):
        if self.name == name:
            return self
        for s in self.subchecks:
            hit = s.find(name)
            if hit is not None:
                return hit
        return None

    def to_dict(self) -> dict:
        out = {"status": self.status, "witness": self.witness, "window": self.window}
        if self.detail:
            out["detail"] = self.detail
        if self.subchecks:
            out["subchecks"] = {s.name: s.to_dict() for s in self.subchecks}
        return out


class Checker:
    """Accumulates a single check: the first failure wins, windows are recorded."""

    def __init__(self, name, window=None):
        self.name = name
        self.window = window
        self.witness = None
        self.count = 0

    def expect(self, ok, **witness):
        self.count += 1
        if not ok and self.witness is None:
            self.witness = {k: _fmt(v) for k, v in witness.items()}
        return ok

    @property
    def failed(self):
        return self.witness is not None

    def report(self, detail=None) -> CheckReport:
        if detail is None:
            detail = f"{self.count} case" + ("" if self.count == 1 else "s")
        if self.witness is not None:
            return CheckReport(self.name, FAIL, witness=self.witness, window=self.window, detail=detail)
        if self.window:
            return CheckReport(self.name, PASS_ON_WINDOW, window=self.window, detail=detail)
        return CheckReport(self.name, PASS, detail=detail)


def _fmt(v):
    if isinstance(v, (str, int, bool)) or v is None:
        return v
    if isinstance(v, dict):
        return format_vector(v)
    if hasattr(v, "_fields"):
        return str(v)
    if isinstance(v, tuple):
        return format_key(v)
    if isinstance(v, list):
        return [_fmt(x) for x in v]
    return str(v)


def format_key(k) -> str:
    if isinstance(k, tuple) and not hasattr(k, "_fields"):
        return " ⊗ ".join(str(x) for x in k) if k else "()"
    return str(k)


def format_vector(v: dict) -> str:
    if not v:
        return "0"
    keys = list(v)
    try:
        keys.sort()
    except TypeError:
        keys.sort(key=str)
    parts = []
    for k in keys:
        cs = str(v[k])
        label = format_key(k)
        if cs == "1":
            parts.append(label)
        elif cs == "-1":
            parts.append(f"-{label}")
        else:
            parts.append(f"({cs})*{label}")
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out
