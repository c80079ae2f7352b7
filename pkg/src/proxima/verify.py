"""Exhaustive contraction verification over the admissible pair table.

Each verifier scans every unordered combination (pair or triple) of
admissible pairs allowed by the relevant distinctness constraint, computes
the ratio of the left-hand aggregate to the right-hand one, and decides:

* ``contraction`` — the supremum of ratios is < 1; it is reported as
  ``alpha_min`` (the minimal feasible constant) with the extremal witness;
* ``not-contraction`` — some combination has ratio >= 1, or a combination
  has right side ~ 0 while the left side is positive (no finite constant
  works); the lexicographically first offending combination is the witness;
* ``vacuous`` — no combination satisfies the distinctness constraint, so the
  condition holds for every constant and certifies nothing.

Because aggregates are symmetric in their arguments, unordered enumeration
is exhaustive; ``checked`` counts the admitted combinations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from proxima import kernels
from proxima.metric import (
    Element,
    MetricInstance,
    distance,
    element_key,
    pairwise_distances,
    same_element,
)
from proxima.proximity import MappingSpec, ProximalPairTable

KIND_PROXIMAL_FIRST = "proximal-1"
KIND_PROXIMAL_SECOND = "proximal-2"
KIND_PERIMETRIC_FIRST = "perimetric-1"
KIND_PERIMETRIC_SECOND = "perimetric-2"
KIND_TRIANGLE_SELFMAP = "triangle-perimeter-selfmap"

STATUS_CONTRACTION = "contraction"
STATUS_NOT_CONTRACTION = "not-contraction"
STATUS_VACUOUS = "vacuous"

LAMBDA_SATISFIED = "satisfied"
LAMBDA_VIOLATED = "violated"


@dataclass(frozen=True)
class PairWitness:
    """Two admissible pairs (u_i, x_i); lhs/rhs are the compared distances
    (source-side u's for the first kind, image-side for the second)."""

    us: tuple[Element, Element]
    xs: tuple[Element, Element]
    lhs: float
    rhs: float

    @property
    def ratio(self) -> float | None:
        return self.lhs / self.rhs if self.rhs > 0 else None


@dataclass(frozen=True)
class TripleWitness:
    """Three admissible pairs (u_i, x_i); lhs/rhs are the compared triangle
    perimeters (source-side u's or image-side, depending on the kind)."""

    us: tuple[Element, Element, Element]
    xs: tuple[Element, Element, Element]
    lhs: float
    rhs: float

    @property
    def ratio(self) -> float | None:
        return self.lhs / self.rhs if self.rhs > 0 else None


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one verifier run.

    ``alpha_min`` is set only for ``contraction`` status; ``witness`` is the
    extremal combination for contractions and the counterexample otherwise
    (absent for vacuous runs).  ``sampled`` marks verdicts obtained on a
    truncated or sampled stand-in for a continuum instance.
    """

    kind: str
    status: str
    alpha_min: float | None
    witness: PairWitness | TripleWitness | None
    checked: int
    reason: str = ""
    sampled: bool = False


@dataclass(frozen=True)
class LambdaReport:
    """Whether some distinct x, y in A satisfy d(x,Ty) = d(y,Tx) = gap.

    Such a swapped pair lets the iteration oscillate forever between two
    points (it is the proximal analogue of a period-2 cycle), so a
    ``violated`` status comes with the witness pair.
    """

    status: str
    witness: tuple[Element, Element] | None
    checked: int


def _distinct_mask(elems) -> np.ndarray:
    k = len(elems)
    mask = np.zeros((k, k), dtype=np.uint8)
    for i in range(k):
        for j in range(i + 1, k):
            if not same_element(elems[i], elems[j]):
                mask[i, j] = 1
                mask[j, i] = 1
    return mask


def _pair_report(kind, us, xs, lhs_mat, rhs_mat, mask, eps, *, sampled, backend, vacuous_reason):
    checked, best, best_combo, first_bad, degenerate = kernels.scan_pairs(
        lhs_mat, rhs_mat, mask, eps, backend=backend
    )
    return _interpret(
        kind, checked, best, best_combo, first_bad, degenerate,
        make_witness=lambda c: PairWitness(
            us=(us[c[0]], us[c[1]]),
            xs=(xs[c[0]], xs[c[1]]),
            lhs=float(lhs_mat[c[0], c[1]]),
            rhs=float(rhs_mat[c[0], c[1]]),
        ),
        sampled=sampled,
        vacuous_reason=vacuous_reason,
    )


def _triple_report(kind, us, xs, lhs_mat, rhs_mat, mask, eps, *, sampled, backend, vacuous_reason):
    checked, best, best_combo, first_bad, degenerate = kernels.scan_triples(
        lhs_mat, rhs_mat, mask, eps, backend=backend
    )

    def make_witness(c):
        i, j, l = c
        return TripleWitness(
            us=(us[i], us[j], us[l]),
            xs=(xs[i], xs[j], xs[l]),
            lhs=float(lhs_mat[i, j] + lhs_mat[j, l] + lhs_mat[i, l]),
            rhs=float(rhs_mat[i, j] + rhs_mat[j, l] + rhs_mat[i, l]),
        )

    return _interpret(
        kind, checked, best, best_combo, first_bad, degenerate,
        make_witness=make_witness, sampled=sampled, vacuous_reason=vacuous_reason,
    )


def _interpret(kind, checked, best, best_combo, first_bad, degenerate, *,
               make_witness, sampled, vacuous_reason):
    if checked == 0:
        return VerificationReport(
            kind=kind, status=STATUS_VACUOUS, alpha_min=None, witness=None,
            checked=0, reason=vacuous_reason, sampled=sampled,
        )
    if degenerate is not None or (best_combo is not None and best >= 1.0):
        # Either certificate refutes the condition; report the one that
        # comes first in lexicographic enumeration order.
        candidates = [c for c in (first_bad, degenerate) if c is not None]
        combo = min(candidates)
        witness = make_witness(combo)
        reason = (
            "left side exceeds the tolerance while the right side is ~0"
            if combo == degenerate
            else f"ratio {witness.lhs:g}/{witness.rhs:g} >= 1"
        )
        return VerificationReport(
            kind=kind, status=STATUS_NOT_CONTRACTION, alpha_min=None,
            witness=witness, checked=checked, reason=reason, sampled=sampled,
        )
    if best_combo is None:
        # Every admitted combination had both sides below the tolerance:
        # any constant works, including 0.
        return VerificationReport(
            kind=kind, status=STATUS_CONTRACTION, alpha_min=0.0, witness=None,
            checked=checked, sampled=sampled,
            reason="all combinations degenerate within tolerance",
        )
    return VerificationReport(
        kind=kind, status=STATUS_CONTRACTION, alpha_min=max(best, 0.0),
        witness=make_witness(best_combo), checked=checked, sampled=sampled,
    )


def verify_proximal_first(
    inst: MetricInstance, spec: MappingSpec, table: ProximalPairTable,
    backend: str | None = None,
) -> VerificationReport:
    """d(u1, u2) <= alpha * d(x1, x2) over admissible pairs with x1 != x2."""
    us, xs = table.us, table.xs
    lhs = pairwise_distances(inst, us, us)
    rhs = pairwise_distances(inst, xs, xs)
    return _pair_report(
        KIND_PROXIMAL_FIRST, us, xs, lhs, rhs, _distinct_mask(xs), inst.epsilon,
        sampled=inst.sampled, backend=backend,
        vacuous_reason="fewer than two admissible pairs with distinct x",
    )


def verify_proximal_second(
    inst: MetricInstance, spec: MappingSpec, table: ProximalPairTable,
    backend: str | None = None,
) -> VerificationReport:
    """d(Tu1, Tu2) <= alpha * d(Tx1, Tx2) over pairs with Tx1 != Tx2."""
    us, xs = table.us, table.xs
    tu = [spec.apply(inst, u) for u in us]
    tx = [spec.apply(inst, x) for x in xs]
    lhs = pairwise_distances(inst, tu, tu)
    rhs = pairwise_distances(inst, tx, tx)
    return _pair_report(
        KIND_PROXIMAL_SECOND, us, xs, lhs, rhs, _distinct_mask(tx), inst.epsilon,
        sampled=inst.sampled, backend=backend,
        vacuous_reason="fewer than two admissible pairs with distinct images",
    )


def verify_perimetric_first(
    inst: MetricInstance, spec: MappingSpec, table: ProximalPairTable,
    backend: str | None = None,
) -> VerificationReport:
    """Perimeter of (u1,u2,u3) <= alpha * perimeter of (x1,x2,x3) over triples
    of admissible pairs with pairwise-distinct x's (u's may repeat)."""
    us, xs = table.us, table.xs
    lhs = pairwise_distances(inst, us, us)
    rhs = pairwise_distances(inst, xs, xs)
    return _triple_report(
        KIND_PERIMETRIC_FIRST, us, xs, lhs, rhs, _distinct_mask(xs), inst.epsilon,
        sampled=inst.sampled, backend=backend,
        vacuous_reason="fewer than three admissible pairs with pairwise-distinct x",
    )


def verify_perimetric_second(
    inst: MetricInstance, spec: MappingSpec, table: ProximalPairTable,
    backend: str | None = None,
) -> VerificationReport:
    """Image-side perimeter comparison over triples with pairwise-distinct
    images Tx1, Tx2, Tx3."""
    us, xs = table.us, table.xs
    tu = [spec.apply(inst, u) for u in us]
    tx = [spec.apply(inst, x) for x in xs]
    lhs = pairwise_distances(inst, tu, tu)
    rhs = pairwise_distances(inst, tx, tx)
    return _triple_report(
        KIND_PERIMETRIC_SECOND, us, xs, lhs, rhs, _distinct_mask(tx), inst.epsilon,
        sampled=inst.sampled, backend=backend,
        vacuous_reason="fewer than three admissible pairs with pairwise-distinct images",
    )


def verify_triangle_perimeter_selfmap(
    inst: MetricInstance, spec: MappingSpec, backend: str | None = None,
) -> VerificationReport:
    """Self-map specialisation: perimeter of images <= alpha * perimeter of
    sources over all pairwise-distinct triples of the (single) set."""
    if not inst.self_map:
        raise ValueError("the triangle-perimeter condition applies to self-map instances")
    elems = inst.elements(inst.set_a)
    if len(elems) < 3:
        raise ValueError("need at least three points for a triangle perimeter")
    images = [spec.apply(inst, e) for e in elems]
    lhs = pairwise_distances(inst, images, images)
    rhs = pairwise_distances(inst, elems, elems)
    return _triple_report(
        KIND_TRIANGLE_SELFMAP, images, elems, lhs, rhs, _distinct_mask(elems), inst.epsilon,
        sampled=inst.sampled, backend=backend,
        vacuous_reason="fewer than three distinct points",
    )


def check_condition_lambda(
    inst: MetricInstance, spec: MappingSpec, table: ProximalPairTable
) -> LambdaReport:
    """Look for distinct x, y with both cross equations admissible:
    (x, y) and (y, x) both in the pair relation."""
    key_pairs = {(element_key(u), element_key(x)) for u, x in table.pairs}
    witness = None
    for u, x in table.pairs:
        if same_element(u, x):
            continue
        if (element_key(x), element_key(u)) in key_pairs:
            pair = tuple(sorted((u, x), key=element_key))
            if witness is None or (element_key(pair[0]), element_key(pair[1])) < (
                element_key(witness[0]), element_key(witness[1])
            ):
                witness = pair
    return LambdaReport(
        status=LAMBDA_VIOLATED if witness else LAMBDA_SATISFIED,
        witness=witness,  # type: ignore[arg-type]
        checked=len(table.pairs),
    )


def detect_period_two(inst: MetricInstance, spec: MappingSpec) -> tuple[tuple[Element, Element], ...]:
    """All two-cycles x -> Tx -> x (with Tx != x) of a finite self-map,
    each reported once as (x, Tx) with x the smaller element."""
    if not inst.self_map:
        raise ValueError("period-2 detection applies to self-map instances")
    elems = sorted(inst.elements(inst.set_a), key=element_key)

    def resolve(img: Element) -> Element:
        for e in elems:
            if same_element(e, img):
                return e
        best = min(elems, key=lambda e: (distance(inst, e, img), element_key(e)))
        if distance(inst, best, img) <= inst.epsilon:
            return best
        raise ValueError(f"image {img!r} is not an element of the set")

    cycles = []
    for x in elems:
        y = resolve(spec.apply(inst, x))
        if same_element(x, y):
            continue
        if same_element(resolve(spec.apply(inst, y)), x) and element_key(x) < element_key(y):
            cycles.append((x, y))
    return tuple(cycles)
