"""Verification certificates: one JSON object per file, byte-stable."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

SCHEMA_VERSION = 1

PASS = "PASS"
FAIL = "FAIL"
ERROR = "ERROR"
UNCERTIFIED = "UNCERTIFIED"
STATUSES = (PASS, FAIL, ERROR, UNCERTIFIED)

_FIELDS = ("schema_version", "identity_id", "params", "mode", "truncation_quarters",
           "status", "mismatch", "elapsed_ms", "tool_version")


@dataclass(frozen=True)
class Certificate:
    identity_id: str
    params: dict
    mode: str
    truncation_quarters: int | None  # None means EXACT
    status: str
    mismatch: dict | None
    elapsed_ms: int
    tool_version: str
    schema_version: int = SCHEMA_VERSION
    # free-text reason for ERROR results; printed, never serialized
    detail: str = field(default="", compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.mismatch is None:
            raise ValueError("a FAIL certificate needs a mismatch")
        if self.status == PASS and self.mismatch is not None:
            raise ValueError("a PASS certificate cannot carry a mismatch")

    def to_dict(self) -> dict:
        out = {}
        for name in _FIELDS:
            value = getattr(self, name)
            if name == "params":
                value = {k: value[k] for k in sorted(value)}
            elif name == "truncation_quarters" and value is None:
                value = "EXACT"
            out[name] = value
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def stable_json(self) -> str:
        """Serialization with elapsed_ms zeroed, for run-to-run comparison."""
        d = self.to_dict()
        d["elapsed_ms"] = 0
        return json.dumps(d, indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        missing = [k for k in _FIELDS if k not in d]
        if missing:
            raise ValueError(f"certificate lacks fields {missing}")
        if d["schema_version"] != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {d['schema_version']}")
        trunc = d["truncation_quarters"]
        return cls(d["identity_id"], dict(d["params"]), d["mode"],
                   None if trunc == "EXACT" else int(trunc), d["status"], d["mismatch"],
                   int(d["elapsed_ms"]), d["tool_version"], d["schema_version"])

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


def mismatch_dict(exponent_quarters: int, lhs: int, rhs: int) -> dict:
    # decimal strings keep big coefficients exact for any JSON reader
    return {"exponent_quarters": exponent_quarters, "lhs_coeff": str(lhs), "rhs_coeff": str(rhs)}


def emit_certificate(cert: Certificate, path: str | Path) -> None:
    Path(path).write_text(cert.to_json(), encoding="utf-8")


def parse_certificate(path: str | Path) -> Certificate:
    return Certificate.from_json(Path(path).read_text(encoding="utf-8"))
