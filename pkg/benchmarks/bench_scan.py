"""Benchmark the enumeration kernels: compiled extension vs pure Python.

Builds the bundled arithmetic-progressions instance truncated to a
configurable number of members, assembles the same distance matrices the
verifiers use, then times ``scan_pairs`` (all ordered pairs) and
``scan_triples`` (all unordered triples) on every available backend.  The
outputs of the backends are compared field by field; any disagreement is a
bug in one of the kernel twins and fails the run.

Usage::

    python3 benchmarks/bench_scan.py [--size N] [--repeat R]

``--size`` is the number of progression members kept per set (the triple
scan is cubic in it), ``--repeat`` the number of timed runs per backend
(best time wins).
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from proxima import kernels, load_instance, pair_table, pairwise_distances, same_element
from proxima.goldens import corpus_dir


def distinct_mask(elems) -> np.ndarray:
    k = len(elems)
    mask = np.zeros((k, k), dtype=np.uint8)
    for i in range(k):
        for j in range(i + 1, k):
            if not same_element(elems[i], elems[j]):
                mask[i, j] = 1
                mask[j, i] = 1
    return mask


def best_time(fn, repeat: int) -> tuple[float, object]:
    result = None
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def fmt_seconds(s: float) -> str:
    if s < 1e-3:
        return f"{s * 1e6:8.1f} us"
    if s < 1.0:
        return f"{s * 1e3:8.2f} ms"
    return f"{s:8.3f} s "


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--size", type=int, default=160,
        help="progression members kept per set (default 160)",
    )
    parser.add_argument(
        "--repeat", type=int, default=3,
        help="timed runs per backend; the best one is reported (default 3)",
    )
    args = parser.parse_args(argv)
    if args.size < 6:
        parser.error("--size must be at least 6 (the mapping needs both fixed branches)")
    if args.repeat < 1:
        parser.error("--repeat must be positive")

    loaded = load_instance(
        corpus_dir() / "arithmetic-progressions.json", truncate=args.size
    )
    inst, spec = loaded.instance, loaded.mapping
    table = pair_table(inst, spec)
    us, xs = table.us, table.xs
    lhs = pairwise_distances(inst, us, us)
    rhs = pairwise_distances(inst, xs, xs)
    mask = distinct_mask(xs)
    k = len(xs)

    backends = kernels.available_backends()
    print(f"instance: {loaded.name}, truncated to {args.size} members per set")
    print(f"admissible pairs: {k}; pair combinations: {k * (k - 1) // 2}; "
          f"triple combinations: {k * (k - 1) * (k - 2) // 6}")
    print(f"backends: {', '.join(backends)} (default: {kernels.BACKEND})")
    if "compiled" not in backends:
        print("warning: compiled extension not built; timing the pure-Python "
              "kernels only", file=sys.stderr)
    print()

    failures = 0
    for name, fn in (("scan_pairs", kernels.scan_pairs),
                     ("scan_triples", kernels.scan_triples)):
        results = {}
        times = {}
        for backend in backends:
            times[backend], results[backend] = best_time(
                lambda b=backend: fn(lhs, rhs, mask, inst.epsilon, backend=b),
                args.repeat,
            )
        reference = results[backends[0]]
        for backend in backends[1:]:
            if results[backend] != reference:
                failures += 1
                print(f"MISMATCH in {name}: {backends[0]} -> {reference} but "
                      f"{backend} -> {results[backend]}", file=sys.stderr)
        checked, best_ratio = reference[0], reference[1]
        print(f"{name}: checked {checked} combinations, best ratio {best_ratio:.12g}")
        for backend in backends:
            line = f"  {backend:>8}: {fmt_seconds(times[backend])}"
            if backend != backends[0] and times[backend] > 0:
                line += f"  ({times[backend] / times[backends[0]]:.1f}x the {backends[0]} time)"
            print(line)
        print()

    if failures:
        print(f"{failures} backend mismatch(es)", file=sys.stderr)
        return 1
    print("all backends produced identical results")
    return 0


if __name__ == "__main__":
    sys.exit(main())
