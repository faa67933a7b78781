"""Machine-readable run reports emitted by the command line tool."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any

SCAN_COLUMNS = ("s", "naive_re", "naive_im", "correct_re", "correct_im", "abs_diff", "winding")

_complex = {
    "type": "object",
    "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
    "required": ["re", "im"],
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "wishart-cf run report",
    "type": "object",
    "properties": {
        "command": {"enum": ["eval", "compare", "scan", "counterexample", "mc-verify", "sde-verify"]},
        "argv": {"type": "array", "items": {"type": "string"}},
        "parameters": {"type": "object"},
        "results": {"type": "array", "items": {"type": "object"}},
        "status": {"enum": ["ok", "PASS", "FAIL", "BRANCH-DEFECT"]},
        "version": {"type": "string"},
        "seeds": {"type": "object", "additionalProperties": {"type": "integer"}},
        "wall_time": {"type": "number", "minimum": 0},
    },
    "required": ["command", "argv", "parameters", "results", "status", "version", "seeds"],
    "additionalProperties": False,
    "$defs": {"complex": _complex},
}


def encode_complex(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def decode_complex(d: dict) -> complex:
    return complex(d["re"], d["im"])


def finite_or_none(x: float) -> float | None:
    return x if math.isfinite(x) else None


@dataclass
class RunReport:
    command: str
    argv: list[str]
    parameters: dict[str, Any]
    results: list[dict[str, Any]] = field(default_factory=list)
    status: str = "ok"
    version: str = ""
    seeds: dict[str, int] = field(default_factory=dict)
    wall_time: float | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["wall_time"] is None:
            del d["wall_time"]
        return d

    def to_json(self) -> str:
        # repr-based float output is the shortest string that round-trips
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))
