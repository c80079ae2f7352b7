"""Golden corpus: bundled instances with frozen expected outcomes.

The corpus directory holds instance documents plus a ``golden.json`` manifest.
Each manifest entry names an instance file and a list of checks; a check is a
small declarative record (an ``op`` plus expected values and tolerances) that
is executed against the freshly loaded instance.  ``run_entry`` returns one
:class:`CheckOutcome` per check so callers (the CLI and the test suite) can
render pass/fail lines and pick exit codes.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .metric import (
    MetricInstance,
    distance,
    element_key,
    format_element,
    nearest_in_set,
)
from .proximity import MappingSpec, gap_distance, pair_table, proximal_core
from .schema import LoadedInstance, load_instance
from .solver import (
    enumerate_bpp,
    image_trace_diagnostics,
    iterate_bpp,
    perimeter_decay_check,
)
from .verify import (
    KIND_PERIMETRIC_FIRST,
    KIND_PERIMETRIC_SECOND,
    KIND_PROXIMAL_FIRST,
    KIND_PROXIMAL_SECOND,
    KIND_TRIANGLE_SELFMAP,
    check_condition_lambda,
    verify_perimetric_first,
    verify_perimetric_second,
    verify_proximal_first,
    verify_proximal_second,
    verify_triangle_perimeter_selfmap,
)

ENV_CORPUS_DIR = "PROXIMA_CORPUS_DIR"
MANIFEST_NAME = "golden.json"

#: CLI kind token -> canonical verifier kind name.
KIND_TOKENS = {
    "proximal1": KIND_PROXIMAL_FIRST,
    "proximal2": KIND_PROXIMAL_SECOND,
    "perimetric1": KIND_PERIMETRIC_FIRST,
    "perimetric2": KIND_PERIMETRIC_SECOND,
    "triangle": KIND_TRIANGLE_SELFMAP,
}

_VERIFIERS = {
    KIND_PROXIMAL_FIRST: verify_proximal_first,
    KIND_PROXIMAL_SECOND: verify_proximal_second,
    KIND_PERIMETRIC_FIRST: verify_perimetric_first,
    KIND_PERIMETRIC_SECOND: verify_perimetric_second,
}


def corpus_dir() -> Path:
    """Directory holding the golden corpus.

    Honors the ``PROXIMA_CORPUS_DIR`` environment variable so an alternate
    corpus can be swapped in without reinstalling; defaults to the corpus
    bundled with the package.
    """
    override = os.environ.get(ENV_CORPUS_DIR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "corpus"


def load_manifest(directory: Path | None = None) -> dict:
    directory = corpus_dir() if directory is None else Path(directory)
    path = directory / MANIFEST_NAME
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def entry_names(directory: Path | None = None) -> list[str]:
    manifest = load_manifest(directory)
    return [entry["name"] for entry in manifest.get("entries", [])]


@dataclass(frozen=True)
class CheckOutcome:
    """Result of one golden check."""

    entry: str
    op: str
    passed: bool
    detail: str

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.entry} :: {self.op} :: {self.detail}"


def _resolve_element(inst: MetricInstance, value: Any):
    """Turn a golden-file element spec into a concrete space element."""
    if isinstance(value, dict):
        if "label" in value:
            label = value["label"]
            for pt in inst.points:
                if pt.label == label:
                    return inst.element(pt.id)
            raise ValueError(f"no point labelled {label!r}")
        if "point" in value:
            return inst.element(int(value["point"]))
        raise ValueError(f"unrecognised element spec: {value!r}")
    if isinstance(value, (list, tuple)):
        return (float(value[0]), float(value[1]))
    if inst.dim == 0:
        return int(value)
    return float(value)


def _close(inst: MetricInstance, a, b, tol: float) -> bool:
    if isinstance(a, tuple) or isinstance(b, tuple):
        return (
            isinstance(a, tuple)
            and isinstance(b, tuple)
            and math.isclose(a[0], b[0], rel_tol=0.0, abs_tol=tol)
            and math.isclose(a[1], b[1], rel_tol=0.0, abs_tol=tol)
        )
    if inst.dim == 0:
        return a == b
    return math.isclose(float(a), float(b), rel_tol=0.0, abs_tol=tol)


def _set_close(inst: MetricInstance, got: Sequence, want: Sequence, tol: float) -> bool:
    if len(got) != len(want):
        return False
    got_sorted = sorted(got, key=element_key)
    want_sorted = sorted(want, key=element_key)
    return all(_close(inst, g, w, tol) for g, w in zip(got_sorted, want_sorted))


def _fmt_seq(elems: Sequence) -> str:
    return "[" + ", ".join(format_element(e) for e in elems) + "]"


def _num_close(got: float, want: float, tol: float) -> bool:
    return math.isclose(float(got), float(want), rel_tol=0.0, abs_tol=tol)


def _load_for_check(path: Path, check: dict) -> LoadedInstance:
    truncate = check.get("truncate")
    return load_instance(path, truncate=truncate)


def _run_check(entry_name: str, path: Path, check: dict) -> CheckOutcome:
    op = check["op"]
    tol = float(check.get("tol", 1e-9))

    def outcome(passed: bool, detail: str) -> CheckOutcome:
        return CheckOutcome(entry=entry_name, op=op, passed=passed, detail=detail)

    if op == "validate":
        try:
            _load_for_check(path, check)
        except ValueError as exc:
            ok = not bool(check.get("expect_ok", True))
            return outcome(ok, f"load failed: {exc}")
        ok = bool(check.get("expect_ok", True))
        return outcome(ok, "document loads and validates")

    loaded = _load_for_check(path, check)
    inst, spec = loaded.instance, loaded.mapping

    if op == "distance":
        p = _resolve_element(inst, check["p"])
        q = _resolve_element(inst, check["q"])
        got = distance(inst, p, q)
        ok = _num_close(got, float(check["expect"]), tol)
        return outcome(ok, f"d({format_element(p)}, {format_element(q)}) = {got:.12g}")

    if op == "nearest":
        sset = inst.set_a if check.get("set", "a") == "a" else inst.set_b
        q = _resolve_element(inst, check["q"])
        elem, dist = nearest_in_set(inst, sset, q)
        ok = _close(inst, elem, _resolve_element(inst, check["expect_element"]), tol)
        ok = ok and _num_close(dist, float(check["expect_distance"]), tol)
        return outcome(ok, f"nearest({format_element(q)}) = {format_element(elem)} at {dist:.12g}")

    if op == "gap":
        got = gap_distance(inst)
        ok = _num_close(got, float(check["expect"]), tol)
        return outcome(ok, f"d(A, B) = {got:.12g}")

    if op == "apply":
        x = _resolve_element(inst, check["x"])
        got = spec.apply(inst, x)
        ok = _close(inst, got, _resolve_element(inst, check["expect"]), tol)
        return outcome(ok, f"T({format_element(x)}) = {format_element(got)}")

    if op == "cores":
        core_a, core_b = proximal_core(inst)
        want_a = [_resolve_element(inst, v) for v in check["expect_a"]]
        want_b = [_resolve_element(inst, v) for v in check["expect_b"]]
        ok = _set_close(inst, core_a, want_a, tol) and _set_close(inst, core_b, want_b, tol)
        return outcome(ok, f"A0 = {_fmt_seq(core_a)}, B0 = {_fmt_seq(core_b)}")

    if op == "cores-size":
        core_a, core_b = proximal_core(inst)
        ok = len(core_a) == int(check["expect_a_size"]) and len(core_b) == int(
            check["expect_b_size"]
        )
        return outcome(ok, f"|A0| = {len(core_a)}, |B0| = {len(core_b)}")

    if op == "pairs":
        table = pair_table(inst, spec)
        want = [
            (_resolve_element(inst, u), _resolve_element(inst, x)) for u, x in check["expect"]
        ]
        got = list(table.pairs)
        ok = len(got) == len(want)
        if ok:
            got_sorted = sorted(got, key=lambda p: (element_key(p[1]), element_key(p[0])))
            want_sorted = sorted(want, key=lambda p: (element_key(p[1]), element_key(p[0])))
            ok = all(
                _close(inst, g[0], w[0], tol) and _close(inst, g[1], w[1], tol)
                for g, w in zip(got_sorted, want_sorted)
            )
        shown = ", ".join(f"({format_element(u)}, {format_element(x)})" for u, x in got)
        return outcome(ok, f"pairs = [{shown}]")

    if op == "pair-present":
        table = pair_table(inst, spec)
        u = _resolve_element(inst, check["pair"][0])
        x = _resolve_element(inst, check["pair"][1])
        ok = any(
            _close(inst, pu, u, tol) and _close(inst, px, x, tol) for pu, px in table.pairs
        )
        return outcome(ok, f"pair ({format_element(u)}, {format_element(x)}) present")

    if op == "inclusion":
        table = pair_table(inst, spec)
        ok = table.inclusion_holds == bool(check["expect"])
        return outcome(ok, f"T(A0) within B0: {table.inclusion_holds}")

    if op == "verify":
        kind = KIND_TOKENS[check["kind"]]
        if kind == KIND_TRIANGLE_SELFMAP:
            report = verify_triangle_perimeter_selfmap(inst, spec)
        else:
            table = pair_table(inst, spec)
            report = _VERIFIERS[kind](inst, spec, table)
        ok = True
        parts = [f"status = {report.status}"]
        if "expect_status" in check:
            ok = ok and report.status == check["expect_status"]
        if "expect_alpha" in check:
            atol = float(check.get("alpha_tol", 1e-9))
            ok = ok and report.alpha_min is not None and _num_close(
                report.alpha_min, float(check["expect_alpha"]), atol
            )
        if report.alpha_min is not None:
            parts.append(f"alpha = {report.alpha_min:.12g}")
        wtol = float(check.get("witness_tol", 1e-9))
        wit = report.witness
        if "expect_witness_lhs" in check:
            ok = ok and wit is not None and _num_close(wit.lhs, float(check["expect_witness_lhs"]), wtol)
        if "expect_witness_rhs" in check:
            ok = ok and wit is not None and _num_close(wit.rhs, float(check["expect_witness_rhs"]), wtol)
        if "expect_witness_us" in check:
            want_us = [_resolve_element(inst, v) for v in check["expect_witness_us"]]
            ok = ok and wit is not None and len(wit.us) == len(want_us) and all(
                _close(inst, g, w, wtol) for g, w in zip(wit.us, want_us)
            )
        if "expect_witness_xs" in check:
            want_xs = [_resolve_element(inst, v) for v in check["expect_witness_xs"]]
            ok = ok and wit is not None and len(wit.xs) == len(want_xs) and all(
                _close(inst, g, w, wtol) for g, w in zip(wit.xs, want_xs)
            )
        if "expect_checked" in check:
            ok = ok and report.checked == int(check["expect_checked"])
        parts.append(f"checked = {report.checked}")
        if "expect_sampled" in check:
            ok = ok and report.sampled == bool(check["expect_sampled"])
        if wit is not None:
            parts.append(f"witness {wit.lhs:.12g} / {wit.rhs:.12g}")
        return outcome(ok, f"{check['kind']}: " + ", ".join(parts))

    if op == "lambda":
        table = pair_table(inst, spec)
        report = check_condition_lambda(inst, spec, table)
        ok = report.status == check["expect_status"]
        return outcome(ok, f"condition lambda: {report.status}")

    if op == "enumerate":
        result = enumerate_bpp(inst, spec)
        want = [_resolve_element(inst, v) for v in check["expect_points"]]
        ok = _set_close(inst, result.points, want, tol)
        if "expect_count_bound_ok" in check:
            ok = ok and result.count_bound_ok == bool(check["expect_count_bound_ok"])
        return outcome(
            ok,
            f"best proximity points = {_fmt_seq(result.points)} "
            f"(count bound ok: {result.count_bound_ok})",
        )

    if op == "solve":
        start = _resolve_element(inst, check["start"])
        kwargs = {}
        if "solver_tol" in check:
            kwargs["tol"] = float(check["solver_tol"])
        trace = iterate_bpp(inst, spec, start, **kwargs)
        trace = image_trace_diagnostics(inst, spec, trace)
        ok = True
        if "expect_termination" in check:
            ok = ok and trace.termination == check["expect_termination"]
        if "expect_result" in check:
            rtol = float(check.get("result_tol", 1e-6))
            want = _resolve_element(inst, check["expect_result"])
            ok = ok and trace.result is not None and _close(inst, trace.result, want, rtol)
        if "expect_iterates" in check:
            itol = float(check.get("iterate_tol", 1e-9))
            want_seq = [_resolve_element(inst, v) for v in check["expect_iterates"]]
            ok = ok and len(trace.iterates) == len(want_seq) and all(
                _close(inst, g, w, itol) for g, w in zip(trace.iterates, want_seq)
            )
        if "expect_max_iterates" in check:
            ok = ok and len(trace.iterates) <= int(check["expect_max_iterates"])
        if "expect_flag" in check:
            want_flag = check["expect_flag"]
            ok = ok and any(
                flag.event == want_flag["event"] and flag.step == int(want_flag["step"])
                for flag in trace.image_flags
            )
        if "expect_start_in_core" in check:
            ok = ok and trace.start_in_core == bool(check["expect_start_in_core"])
        res = format_element(trace.result) if trace.result is not None else "none"
        return outcome(
            ok,
            f"{trace.termination} after {len(trace.iterates)} iterates, result = {res}",
        )

    if op == "decay":
        start = _resolve_element(inst, check["start"])
        trace = iterate_bpp(inst, spec, start)
        report = perimeter_decay_check(trace, float(check["alpha"]))
        ok = report.passed == bool(check["expect_passed"])
        return outcome(
            ok,
            f"decay at alpha = {check['alpha']}: "
            f"ratio {all(report.ratio_ok)}, geometric {all(report.geometric_ok)}, "
            f"edge {all(report.edge_ok)}",
        )

    if op == "truncated-a":
        members = sorted(inst.elements(inst.set_a), key=element_key)
        ok = (
            len(members) == int(check["expect_count"])
            and _num_close(members[0], float(check["expect_first"]), tol)
            and _num_close(members[-1], float(check["expect_last"]), tol)
        )
        return outcome(
            ok,
            f"A truncated to {len(members)} members "
            f"[{format_element(members[0])} .. {format_element(members[-1])}]",
        )

    raise ValueError(f"unknown golden op: {op!r}")


def run_entry(name: str, directory: Path | None = None) -> list[CheckOutcome]:
    """Run all golden checks for one corpus entry."""
    directory = corpus_dir() if directory is None else Path(directory)
    manifest = load_manifest(directory)
    for entry in manifest.get("entries", []):
        if entry["name"] == name:
            path = directory / entry["file"]
            return [_run_check(name, path, check) for check in entry["checks"]]
    raise KeyError(f"no corpus entry named {name!r}")


def run_all(directory: Path | None = None) -> list[CheckOutcome]:
    """Run every golden check in the corpus."""
    directory = corpus_dir() if directory is None else Path(directory)
    outcomes: list[CheckOutcome] = []
    for name in entry_names(directory):
        outcomes.extend(run_entry(name, directory))
    return outcomes
