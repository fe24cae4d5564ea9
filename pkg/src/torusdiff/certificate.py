"""Self-contained, re-checkable verification records.

A certificate stores the exact quantities a construction produced together
with the comparisons (``checks``) that decide its verdict. Each check names
two entries of ``computed`` (or a literal rational) and a relation, so the
verdict can be recomputed from the JSON alone via :func:`reverify`.

JSON schema::

    {"claim": str, "params": {name: int | "p/q"}, "computed": {name: "p/q"},
     "bound": "p/q", "checks": [[lhs, op, rhs], ...], "verdict": bool,
     "witnesses": [{"point": {...}, "region": [...], "value": "p/q", ...}],
     "children": [certificate, ...]}
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .serialize import rational_str

OPS = {
    "<": operator.lt,
    "<=": operator.le,
    "==": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}


def _resolve(term: str, computed: dict[str, Fraction]) -> Fraction:
    if term in computed:
        return computed[term]
    return Fraction(term)


def evaluate_checks(checks, computed) -> bool:
    return all(OPS[op](_resolve(lhs, computed), _resolve(rhs, computed)) for lhs, op, rhs in checks)


@dataclass
class Certificate:
    claim: str
    params: dict[str, Any]
    computed: dict[str, Fraction]
    checks: list[tuple[str, str, str]]
    bound: Fraction
    witnesses: list[dict] = field(default_factory=list)
    children: list["Certificate"] = field(default_factory=list)
    verdict: bool = field(init=False)

    def __post_init__(self):
        for lhs, op, rhs in self.checks:
            if op not in OPS:
                raise ValueError(f"unknown relation {op!r}")
            for term in (lhs, rhs):
                _resolve(term, self.computed)  # fail early on typos
        self.verdict = evaluate_checks(self.checks, self.computed) and all(c.verdict for c in self.children)

    def failed_checks(self) -> list[tuple[str, str, str]]:
        return [c for c in self.checks if not evaluate_checks([c], self.computed)]

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "params": {k: (rational_str(v) if isinstance(v, Fraction) else v) for k, v in self.params.items()},
            "computed": {k: rational_str(v) for k, v in self.computed.items()},
            "bound": rational_str(self.bound),
            "checks": [list(c) for c in self.checks],
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "children": [c.to_dict() for c in self.children],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def reverify(data: dict) -> bool:
    """Recompute a serialized certificate's verdict from its recorded numbers."""
    computed = {k: Fraction(v) for k, v in data["computed"].items()}
    ok = evaluate_checks([tuple(c) for c in data["checks"]], computed)
    return ok and all(reverify(child) for child in data.get("children", []))


def from_dict(data: dict) -> Certificate:
    cert = Certificate(
        claim=data["claim"],
        params=dict(data["params"]),
        computed={k: Fraction(v) for k, v in data["computed"].items()},
        checks=[tuple(c) for c in data["checks"]],
        bound=Fraction(data["bound"]),
        witnesses=list(data.get("witnesses", [])),
        children=[from_dict(c) for c in data.get("children", [])],
    )
    return cert
