"""Report records and their serialisation.

A Report holds only JSON-native data: rationals become "num/den" strings,
polynomials their canonical text, infinity the string "inf".  Normalising
on construction makes parse_report(serialize_report(x)) == x hold exactly.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .exact.poly import MPoly, RatFun
from .exact.rational import fmt_rational

PASS, FAIL, INFO = "pass", "fail", "info"
STATUSES = (PASS, FAIL, INFO)


def to_plain(value: Any) -> Any:
    """Convert exact objects to JSON-native values without ever producing a float."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        raise TypeError(f"refusing to serialise float {value!r}; use an exact type")
    if isinstance(value, Fraction):
        return fmt_rational(value)
    if isinstance(value, (MPoly, RatFun)):
        return str(value)
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_plain(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if hasattr(value, "__str__") and type(value).__str__ is not object.__str__:
        return str(value)
    raise TypeError(f"cannot serialise {type(value).__name__}")


@dataclass
class Report:
    command: str
    params: Dict[str, Any]
    status: str
    results: List[Any] = field(default_factory=list)
    timing_ms: Optional[int] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}, got {self.status!r}")
        self.params = to_plain(self.params)
        self.results = to_plain(list(self.results))

    def as_dict(self) -> Dict[str, Any]:
        out = {"command": self.command, "params": self.params, "status": self.status, "results": self.results}
        if self.timing_ms is not None:
            out["timing_ms"] = self.timing_ms
        return out


def _cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "yes" if value else "no"
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _text(rep: Report) -> str:
    lines = [f"command: {rep.command}", f"status:  {rep.status}"]
    if rep.params:
        lines.append("params:  " + " ".join(f"{k}={_cell(v)}" for k, v in sorted(rep.params.items())))
    if rep.timing_ms is not None:
        lines.append(f"timing:  {rep.timing_ms} ms")
    if not rep.results:
        lines.append("(no results)")
        return "\n".join(lines) + "\n"
    records = [x if isinstance(x, dict) else {"value": x} for x in rep.results]
    keys: List[str] = []
    for rec in records:
        keys += [k for k in rec if k not in keys]
    rows = [[_cell(rec.get(k, "")) for k in keys] for rec in records]
    widths = [max(len(k), *(len(row[i]) for row in rows)) for i, k in enumerate(keys)]
    lines.append("")
    lines.append("  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def serialize_report(rep: Report, fmt: str = "json") -> bytes:
    """Deterministic bytes: sorted-key compact JSON, or a plain-text table."""
    if fmt == "json":
        return (json.dumps(rep.as_dict(), sort_keys=True, separators=(",", ":")) + "\n").encode()
    if fmt == "text":
        return _text(rep).encode()
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(data: bytes) -> Report:
    """Inverse of serialize_report for the JSON format."""
    obj = json.loads(data)
    return Report(obj["command"], obj["params"], obj["status"], obj["results"], obj.get("timing_ms"))


__all__ = ["PASS", "FAIL", "INFO", "Report", "to_plain", "serialize_report", "parse_report"]
