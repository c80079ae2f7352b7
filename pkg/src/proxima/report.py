"""Machine-readable run reports and the payload encoders behind them.

Every CLI command produces a RunReport whose payload is plain JSON-native
data (dicts, lists, numbers, strings, booleans, None), so serializing and
re-parsing a report yields an identical structure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from proxima.metric import Element, ValidationReport
from proxima.proximity import BoundaryEntry, ProximalPairTable
from proxima.solver import BppResult, DecayReport, SolverTrace
from proxima.verify import LambdaReport, VerificationReport


@dataclass
class RunReport:
    command: str
    instance_name: str
    payload: dict
    expected: dict | None = None
    passed: bool | None = None


def to_json(report: RunReport) -> str:
    return json.dumps(
        {
            "command": report.command,
            "instance_name": report.instance_name,
            "payload": report.payload,
            "expected": report.expected,
            "passed": report.passed,
        },
        indent=2,
        sort_keys=True,
    )


def from_json(text: str) -> RunReport:
    d = json.loads(text)
    return RunReport(
        command=d["command"],
        instance_name=d["instance_name"],
        payload=d["payload"],
        expected=d.get("expected"),
        passed=d.get("passed"),
    )


def encode_element(e: Element) -> Any:
    if isinstance(e, tuple):
        return [float(e[0]), float(e[1])]
    if isinstance(e, bool):  # guard: bool is an int subclass
        raise TypeError("boolean is not an element")
    if isinstance(e, int):
        return e
    return float(e)


def validation_payload(report: ValidationReport) -> dict:
    return {
        "ok": report.ok,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks
        ],
    }


def table_payload(table: ProximalPairTable) -> dict:
    return {
        "gap": table.gap,
        "pairs": [[encode_element(u), encode_element(x)] for u, x in table.pairs],
        "core_a": [encode_element(e) for e in table.core_a],
        "core_b": [encode_element(e) for e in table.core_b],
        "inclusion_holds": table.inclusion_holds,
        "epsilon": table.epsilon,
    }


def boundary_payload(entries: tuple[BoundaryEntry, ...]) -> list:
    return [{"x": encode_element(e.x), "partner": e.partner} for e in entries]


def verification_payload(vr: VerificationReport) -> dict:
    witness = None
    if vr.witness is not None:
        witness = {
            "us": [encode_element(e) for e in vr.witness.us],
            "xs": [encode_element(e) for e in vr.witness.xs],
            "lhs": vr.witness.lhs,
            "rhs": vr.witness.rhs,
            "ratio": vr.witness.ratio,
        }
    return {
        "kind": vr.kind,
        "status": vr.status,
        "alpha_min": vr.alpha_min,
        "witness": witness,
        "checked": vr.checked,
        "reason": vr.reason,
        "sampled": vr.sampled,
    }


def lambda_payload(lr: LambdaReport) -> dict:
    return {
        "status": lr.status,
        "witness": [encode_element(e) for e in lr.witness] if lr.witness else None,
        "checked": lr.checked,
    }


def trace_payload(tr: SolverTrace) -> dict:
    return {
        "iterates": [encode_element(e) for e in tr.iterates],
        "step_distances": list(tr.step_distances),
        "perimeters": list(tr.perimeters),
        "candidates": [[encode_element(e) for e in step] for step in tr.candidates],
        "termination": tr.termination,
        "result": encode_element(tr.result) if tr.result is not None else None,
        "residual": tr.residual,
        "gap": tr.gap,
        "start_in_core": tr.start_in_core,
        "epsilon": tr.epsilon,
        "tol": tr.tol,
        "image_perimeters": list(tr.image_perimeters),
        "image_flags": [{"event": f.event, "step": f.step} for f in tr.image_flags],
    }


def bpp_payload(b: BppResult) -> dict:
    return {
        "points": [encode_element(e) for e in b.points],
        "residuals": list(b.residuals),
        "count_bound_ok": b.count_bound_ok,
        "gap": b.gap,
    }


def decay_payload(d: DecayReport) -> dict:
    return {
        "alpha": d.alpha,
        "ratio_ok": list(d.ratio_ok),
        "geometric_ok": list(d.geometric_ok),
        "edge_ok": list(d.edge_ok),
        "passed": d.passed,
    }
