"""Command-line interface.

Commands:
  validate FILE            check the document and the metric/mapping axioms
  analyze FILE             gap, proximal cores, admissible-pair table, inclusion
  verify FILE --kind K     run one contraction verifier, print the certificate
  lambda FILE              check the no-swapped-pairs condition
  solve FILE --start S     run the best-proximity-point iteration with a trace
  enumerate FILE           brute-force all best proximity points
  corpus [--all|--name N]  re-check the bundled golden corpus

Common flags: --format {text|json}, --epsilon E, --truncate N.
Exit codes: 0 pass, 1 negative result or golden mismatch, 2 usage/input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .goldens import KIND_TOKENS, corpus_dir, entry_names, run_all, run_entry
from .metric import (
    SET_FINITE,
    SPACE_MATRIX,
    format_element,
    validate_instance,
)
from .proximity import pair_table, validate_mapping
from .report import (
    RunReport,
    bpp_payload,
    lambda_payload,
    table_payload,
    to_json,
    trace_payload,
    validation_payload,
    verification_payload,
)
from .schema import load_instance
from .solver import enumerate_bpp, image_trace_diagnostics, iterate_bpp
from .verify import (
    KIND_TRIANGLE_SELFMAP,
    LAMBDA_SATISFIED,
    STATUS_CONTRACTION,
    STATUS_NOT_CONTRACTION,
    STATUS_VACUOUS,
    check_condition_lambda,
    verify_perimetric_first,
    verify_perimetric_second,
    verify_proximal_first,
    verify_proximal_second,
    verify_triangle_perimeter_selfmap,
)

_VERIFIER_BY_KIND = {
    "proximal1": verify_proximal_first,
    "proximal2": verify_proximal_second,
    "perimetric1": verify_perimetric_first,
    "perimetric2": verify_perimetric_second,
}


class _UsageError(Exception):
    """Input or usage problem: reported on stderr, exit code 2."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxima",
        description="Verify proximal contraction conditions and compute best proximity points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_file: bool = True) -> None:
        if with_file:
            p.add_argument("file", help="instance document (JSON)")
            p.add_argument("--epsilon", type=float, default=None, help="override the instance tolerance")
            p.add_argument(
                "--truncate",
                type=int,
                default=None,
                help="restrict progression sets to their first N members",
            )
        p.add_argument(
            "--format",
            choices=("text", "json"),
            default="text",
            help="output format (default: text)",
        )

    add_common(sub.add_parser("validate", help="check document and axioms"))
    add_common(sub.add_parser("analyze", help="gap, cores, pair table, inclusion"))

    p_verify = sub.add_parser("verify", help="run one contraction verifier")
    add_common(p_verify)
    p_verify.add_argument(
        "--kind",
        required=True,
        choices=tuple(KIND_TOKENS),
        help="which contraction condition to check",
    )

    add_common(sub.add_parser("lambda", help="check the no-swapped-pairs condition"))

    p_solve = sub.add_parser("solve", help="run the iteration from a start point")
    add_common(p_solve)
    p_solve.add_argument("--start", required=True, help="start element: label, id, value, or x,y")
    p_solve.add_argument("--max-iter", type=int, default=None, help="iteration cap")
    p_solve.add_argument("--tol", type=float, default=None, help="convergence tolerance")

    add_common(sub.add_parser("enumerate", help="brute-force all best proximity points"))

    p_corpus = sub.add_parser("corpus", help="re-check the bundled golden corpus")
    group = p_corpus.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="run every corpus entry (default)")
    group.add_argument("--name", default=None, help="run a single corpus entry")
    add_common(p_corpus, with_file=False)

    return parser


def _load(args: argparse.Namespace, validate: bool = True):
    return load_instance(
        args.file, epsilon=args.epsilon, truncate=args.truncate, validate=validate
    )


def _parse_start(inst, text: str):
    """Parse --start: "x,y" coords, a registry label, a matrix/registry id, or a 1-d value."""
    t = text.strip()
    if "," in t:
        if inst.dim != 2:
            raise _UsageError(f"coordinate pair {t!r} only makes sense in a planar space")
        first, second = t.split(",", 1)
        try:
            return (float(first), float(second))
        except ValueError:
            raise _UsageError(f"cannot parse coordinates from {t!r}") from None
    for p in inst.points:
        if p.label == t:
            return inst.element(p.id)
    try:
        if inst.space == SPACE_MATRIX:
            return inst.element(int(t))
        if inst.dim == 1:
            return float(t)
        return inst.element(int(t))
    except (ValueError, KeyError):
        raise _UsageError(f"cannot interpret start element {t!r}") from None


def _emit(args: argparse.Namespace, report: RunReport, text_lines: list[str]) -> None:
    if args.format == "json":
        print(to_json(report))
    else:
        for line in text_lines:
            print(line)


def _fmt_seq(elems) -> str:
    return "[" + ", ".join(format_element(e) for e in elems) + "]"


def _cmd_validate(args: argparse.Namespace) -> int:
    loaded = _load(args, validate=False)
    report = validate_instance(loaded.instance)
    report = report.merged(validate_mapping(loaded.instance, loaded.mapping))
    payload = validation_payload(report)
    lines = [f"instance: {loaded.name}"]
    for check in report.checks:
        mark = "ok" if check.passed else "FAIL"
        lines.append(f"  [{mark:>4}] {check.name}: {check.detail}".rstrip(": "))
    lines.append("valid" if report.ok else "invalid")
    _emit(args, RunReport("validate", loaded.name, payload, passed=report.ok), lines)
    return 0 if report.ok else 2


def _cmd_analyze(args: argparse.Namespace) -> int:
    loaded = _load(args)
    inst, spec = loaded.instance, loaded.mapping
    lines = [f"instance: {loaded.name}"]
    if inst.set_a.kind == SET_FINITE:
        table = pair_table(inst, spec)
        payload = {"table": table_payload(table), "note": None}
        lines.append(f"gap d(A, B) = {table.gap:.12g}")
        lines.append(f"A0 = {_fmt_seq(table.core_a)}")
        lines.append(f"B0 = {_fmt_seq(table.core_b)}")
        lines.append("admissible pairs (u, x) with d(u, Tx) = gap:")
        for u, x in table.pairs:
            lines.append(f"  ({format_element(u)}, {format_element(x)})")
        if not table.pairs:
            lines.append("  (none)")
        lines.append(f"T(A0) within B0: {'yes' if table.inclusion_holds else 'no'}")
    else:
        from .proximity import gap_distance

        gap = gap_distance(inst)
        note = "pair table needs a finite first set; use --truncate for progressions"
        payload = {"table": None, "gap": gap, "note": note}
        lines.append(f"gap d(A, B) = {gap:.12g}")
        lines.append(f"note: {note}")
    _emit(args, RunReport("analyze", loaded.name, payload), lines)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    loaded = _load(args)
    inst, spec = loaded.instance, loaded.mapping
    if KIND_TOKENS[args.kind] == KIND_TRIANGLE_SELFMAP:
        vr = verify_triangle_perimeter_selfmap(inst, spec)
    else:
        table = pair_table(inst, spec)
        vr = _VERIFIER_BY_KIND[args.kind](inst, spec, table)
    payload = verification_payload(vr)
    lines = [f"instance: {loaded.name}", f"kind: {vr.kind}", f"status: {vr.status}"]
    if vr.alpha_min is not None:
        lines.append(f"alpha_min: {vr.alpha_min:.12g}")
    if vr.witness is not None:
        w = vr.witness
        lines.append(
            f"witness: us = {_fmt_seq(w.us)}, xs = {_fmt_seq(w.xs)}, "
            f"lhs = {w.lhs:.12g}, rhs = {w.rhs:.12g}"
        )
    lines.append(f"combinations checked: {vr.checked}")
    if vr.reason:
        lines.append(f"reason: {vr.reason}")
    if vr.sampled:
        lines.append("note: computed on a finite sample of the instance")
    _emit(args, RunReport("verify", loaded.name, payload), lines)
    if vr.status == STATUS_NOT_CONTRACTION:
        return 1
    assert vr.status in (STATUS_CONTRACTION, STATUS_VACUOUS)
    return 0


def _cmd_lambda(args: argparse.Namespace) -> int:
    loaded = _load(args)
    inst, spec = loaded.instance, loaded.mapping
    table = pair_table(inst, spec)
    lr = check_condition_lambda(inst, spec, table)
    payload = lambda_payload(lr)
    lines = [f"instance: {loaded.name}", f"condition lambda: {lr.status}"]
    if lr.witness is not None:
        lines.append(f"swapped pair witness: {_fmt_seq(lr.witness)}")
    lines.append(f"pairs checked: {lr.checked}")
    _emit(args, RunReport("lambda", loaded.name, payload), lines)
    return 0 if lr.status == LAMBDA_SATISFIED else 1


def _cmd_solve(args: argparse.Namespace) -> int:
    loaded = _load(args)
    inst, spec = loaded.instance, loaded.mapping
    start = _parse_start(inst, args.start)
    kwargs = {}
    if args.max_iter is not None:
        kwargs["max_iter"] = args.max_iter
    if args.tol is not None:
        kwargs["tol"] = args.tol
    trace = iterate_bpp(inst, spec, start, **kwargs)
    trace = image_trace_diagnostics(inst, spec, trace)
    payload = trace_payload(trace)
    lines = [f"instance: {loaded.name}", f"start: {format_element(trace.iterates[0])}"]
    if not trace.start_in_core:
        lines.append("note: start is outside the proximal core")
    lines.append("iterates:")
    for i, it in enumerate(trace.iterates):
        step = f"  {i}: {format_element(it)}"
        if i > 0 and i - 1 < len(trace.step_distances):
            step += f"  (step {trace.step_distances[i - 1]:.6g})"
        lines.append(step)
    lines.append(f"termination: {trace.termination}")
    if trace.result is not None:
        lines.append(f"result: {format_element(trace.result)}")
        lines.append(f"residual |d(x, Tx) - gap|: {trace.residual:.6g}")
    for flag in trace.image_flags:
        lines.append(f"image diagnostic: {flag.event} at step {flag.step}")
    _emit(args, RunReport("solve", loaded.name, payload), lines)
    return 0 if trace.termination in ("converged-fixed", "converged-cauchy") else 1


def _cmd_enumerate(args: argparse.Namespace) -> int:
    loaded = _load(args)
    result = enumerate_bpp(loaded.instance, loaded.mapping)
    payload = bpp_payload(result)
    lines = [f"instance: {loaded.name}", f"gap: {result.gap:.12g}"]
    if result.points:
        lines.append("best proximity points:")
        for pt, res in zip(result.points, result.residuals):
            lines.append(f"  {format_element(pt)}  (residual {res:.6g})")
    else:
        lines.append("best proximity points: none")
    lines.append(f"count within the two-point bound: {'yes' if result.count_bound_ok else 'no'}")
    _emit(args, RunReport("enumerate", loaded.name, payload), lines)
    return 0 if result.points and result.count_bound_ok else 1


def _cmd_corpus(args: argparse.Namespace) -> int:
    directory = corpus_dir()
    if args.name is not None:
        if args.name not in entry_names(directory):
            raise _UsageError(
                f"no corpus entry named {args.name!r}; "
                f"available: {', '.join(entry_names(directory))}"
            )
        outcomes = run_entry(args.name, directory)
    else:
        outcomes = run_all(directory)
    all_passed = all(o.passed for o in outcomes)
    payload = {
        "corpus_dir": str(Path(directory)),
        "checks": [
            {"entry": o.entry, "op": o.op, "passed": o.passed, "detail": o.detail}
            for o in outcomes
        ],
        "all_passed": all_passed,
    }
    lines = [o.line() for o in outcomes]
    n_fail = sum(1 for o in outcomes if not o.passed)
    lines.append(f"{len(outcomes)} checks, {n_fail} failed")
    _emit(args, RunReport("corpus", "corpus", payload, passed=all_passed), lines)
    return 0 if all_passed else 1


_DISPATCH = {
    "validate": _cmd_validate,
    "analyze": _cmd_analyze,
    "verify": _cmd_verify,
    "lambda": _cmd_lambda,
    "solve": _cmd_solve,
    "enumerate": _cmd_enumerate,
    "corpus": _cmd_corpus,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass both through
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
