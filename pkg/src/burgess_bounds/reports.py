"""Verification report rows and their JSON / CSV / text serializations."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

SIG_DIGITS = 12


def fmt_float(x: Any) -> Any:
    """Round floats to 12 significant digits so emitted reports are stable."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    try:
        v = float(x)
    except (TypeError, ValueError):
        return str(x)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return float(f"{v:.{SIG_DIGITS}g}")


def _clean(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return fmt_float(obj)


def status_from_margin(lo: float, hi: float) -> str:
    if lo > 0:
        return PASS
    if hi < 0:
        return FAIL
    return INCONCLUSIVE


@dataclass
class VerificationReport:
    claim_id: str
    module: str
    params: dict[str, Any]
    status: str
    margin_lo: float | None = None
    margin_hi: float | None = None
    mode: str = "exact"
    notes: str = ""
    runtime_ms: float | None = None
    seed: int | None = None
    sort_key: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == PASS and self.margin_lo is not None and not self.margin_lo > 0:
            raise ValueError(f"{self.claim_id}: pass requires a strictly positive lower margin")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "module": self.module,
            "params": _clean(self.params),
            "status": self.status,
            "margin_lo": fmt_float(self.margin_lo),
            "margin_hi": fmt_float(self.margin_hi),
            "mode": self.mode,
            "notes": self.notes,
            "runtime_ms": fmt_float(self.runtime_ms),
            "seed": self.seed,
        }


CSV_FIELDS = ["claim_id", "module", "params", "status", "margin_lo", "margin_hi",
              "mode", "notes", "runtime_ms", "seed"]


def sort_reports(reports: Iterable[VerificationReport]) -> list[VerificationReport]:
    return sorted(reports, key=lambda r: (r.claim_id, r.sort_key, json.dumps(_clean(r.params), sort_keys=True)))


def summarize(reports: Iterable[VerificationReport]) -> dict[str, int]:
    out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
    for r in reports:
        out[r.status] += 1
    return out


def to_json(header: dict[str, Any], reports: list[VerificationReport]) -> str:
    doc = {"header": _clean(header), "summary": summarize(reports),
           "reports": [r.to_dict() for r in reports]}
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def to_csv(header: dict[str, Any], reports: list[VerificationReport]) -> str:
    buf = io.StringIO()
    buf.write("# " + json.dumps(_clean(header), sort_keys=True) + "\n")
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        row = r.to_dict()
        row["params"] = json.dumps(row["params"], sort_keys=True, separators=(",", ":"))
        w.writerow(row)
    return buf.getvalue()


def to_text(header: dict[str, Any], reports: list[VerificationReport]) -> str:
    lines = ["# " + " ".join(f"{k}={v}" for k, v in _clean(header).items())]
    rows = []
    for r in reports:
        d = r.to_dict()
        params = " ".join(f"{k}={v}" for k, v in d["params"].items())
        rows.append((d["claim_id"], d["status"], str(d["margin_lo"]), str(d["margin_hi"]), d["mode"], params))
    heads = ("claim", "status", "margin_lo", "margin_hi", "mode", "params")
    widths = [max([len(h)] + [len(row[i]) for row in rows]) for i, h in enumerate(heads)]
    lines.append("  ".join(h.ljust(w) for h, w in zip(heads, widths)).rstrip())
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    s = summarize(reports)
    lines.append(f"# pass={s[PASS]} fail={s[FAIL]} inconclusive={s[INCONCLUSIVE]}")
    return "\n".join(lines) + "\n"
