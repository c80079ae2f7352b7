"""Set gap, proximal cores, and the admissible proximal-pair table.

Given two sets ``A``/``B`` and a mapping ``T: A -> B``, the objects here are:

* the gap ``d(A, B)`` — the infimum distance between the sets;
* the cores ``A0`` (elements of A realizing the gap against B) and ``B0``
  (elements of B realizing it against A);
* the pair table — all admissible pairs ``(u, x)`` with ``d(u, Tx)`` equal to
  the gap up to the instance tolerance.  Every contraction verifier and the
  iteration quantify over this finite relation;
* the inclusion check ``T(A0) ⊆ B0``;
* truncation of arithmetic-progression instances to finite ones, with a
  report on elements whose proximal partners fall outside the cut.

For a continuum ``B``, ``B0`` is reported as the finite set of witness points
at which the gap is attained against some element of A; no attempt is made to
describe ``B0`` as a region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from proxima.metric import (
    SET_FINITE,
    SET_INTERVALS,
    SET_PROGRESSION,
    SET_SEGMENT,
    SPACE_LINE,
    SPACE_PLANE,
    CheckResult,
    Element,
    MetricInstance,
    Point,
    SpaceSet,
    ValidationReport,
    distance,
    element_key,
    format_element,
    nearest_in_set,
    same_element,
    set_min_distance,
)

MAP_TABLE = "table"
MAP_PIECEWISE = "piecewise-affine"
MAP_AFFINE_2D = "affine-2d"

COND_EQ = "eq"
COND_LE = "le"
COND_GE = "ge"
COND_RANGE = "range"
COND_ALWAYS = "always"


@dataclass(frozen=True)
class AffinePiece:
    """One branch of a piecewise-affine map on the line: x -> slope*x + offset,
    applicable where the condition holds.  ``bounds`` carries the condition's
    constants: one value for eq/le/ge, two for range, none for always."""

    cond: str
    bounds: tuple[float, ...]
    slope: float
    offset: float

    def matches(self, x: float, eps: float) -> bool:
        if self.cond == COND_ALWAYS:
            return True
        if self.cond == COND_EQ:
            return abs(x - self.bounds[0]) <= eps
        if self.cond == COND_LE:
            return x <= self.bounds[0] + eps
        if self.cond == COND_GE:
            return x >= self.bounds[0] - eps
        if self.cond == COND_RANGE:
            lo, hi = self.bounds
            return lo - eps <= x <= hi + eps
        raise ValueError(f"unknown piece condition {self.cond!r}")

    def apply(self, x: float) -> float:
        return self.slope * x + self.offset


@dataclass(frozen=True, eq=False)
class MappingSpec:
    """The mapping T from A into B, in one of three closed forms.

    * ``table`` — explicit element-to-element assignment (finite A);
    * ``piecewise-affine`` — ordered affine branches on the line with
      first-match semantics;
    * ``affine-2d`` — (x, y) -> M·(x, y) + c in the plane.
    """

    kind: str
    table: tuple[tuple[Element, Element], ...] = ()
    pieces: tuple[AffinePiece, ...] = ()
    matrix: tuple[tuple[float, float], tuple[float, float]] | None = None
    shift: tuple[float, float] = (0.0, 0.0)
    _lookup: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._lookup.update({_hashable(src): img for src, img in self.table})

    def apply(self, inst: MetricInstance, x: Element) -> Element:
        """Image of one element; raises ValueError where T is undefined."""
        if self.kind == MAP_TABLE:
            key = _hashable(x)
            if key in self._lookup:
                return self._lookup[key]
            for src, img in self.table:
                if _coords_close(src, x, inst.epsilon):
                    return img
            raise ValueError(f"mapping is undefined at {format_element(x)}")
        if self.kind == MAP_PIECEWISE:
            xv = float(x)  # type: ignore[arg-type]
            for piece in self.pieces:
                if piece.matches(xv, inst.epsilon):
                    return piece.apply(xv)
            raise ValueError(f"no piece of the mapping covers {format_element(x)}")
        if self.kind == MAP_AFFINE_2D:
            assert self.matrix is not None
            (m00, m01), (m10, m11) = self.matrix
            px, py = x  # type: ignore[misc]
            return (m00 * px + m01 * py + self.shift[0], m10 * px + m11 * py + self.shift[1])
        raise ValueError(f"unknown mapping kind {self.kind!r}")

    def is_injective_on(self, inst: MetricInstance, elems) -> bool:
        """Whether distinct arguments among ``elems`` get distinct images."""
        seen = set()
        for e in elems:
            k = element_key(self.apply(inst, e))
            if k in seen:
                return False
            seen.add(k)
        return True


def _hashable(e: Element):
    return e if not isinstance(e, tuple) else tuple(e)


def _coords_close(a: Element, b: Element, eps: float) -> bool:
    if isinstance(a, tuple) != isinstance(b, tuple):
        return False
    if isinstance(a, tuple):
        return max(abs(a[0] - b[0]), abs(a[1] - b[1])) <= eps  # type: ignore[index]
    return abs(float(a) - float(b)) <= eps


def validate_mapping(inst: MetricInstance, spec: MappingSpec) -> ValidationReport:
    """Totality over A and image membership in B (within the tolerance).

    Continuum domains are checked on an evenly spaced sample, which the
    corresponding report entries say explicitly.
    """
    checks: list[CheckResult] = []

    def add(name: str, passed: bool, detail: str = "") -> None:
        checks.append(CheckResult(name, passed, detail))

    compatible, why = _kind_compatible(inst, spec)
    add("mapping-kind-compatible", compatible, why)
    if not compatible:
        return ValidationReport(tuple(checks))

    samples, sampled = _domain_samples(inst)
    undefined = []
    outside = []
    for x in samples:
        try:
            img = spec.apply(inst, x)
        except ValueError:
            undefined.append(x)
            continue
        if _membership_distance(inst, inst.set_b, img) > inst.epsilon:
            outside.append((x, img))
    suffix = " (sample-based)" if sampled else ""
    add("mapping-total", not undefined,
        f"undefined at {[format_element(x) for x in undefined[:4]]}{suffix}" if undefined else f"total{suffix}")
    add("mapping-images-in-b", not outside,
        f"images outside B: {[(format_element(x), format_element(i)) for x, i in outside[:4]]}{suffix}"
        if outside else f"all images lie in B{suffix}")
    return ValidationReport(tuple(checks))


def _kind_compatible(inst: MetricInstance, spec: MappingSpec) -> tuple[bool, str]:
    if spec.kind == MAP_TABLE:
        if inst.set_a.kind != SET_FINITE:
            return False, "table mappings need a finite A"
        return True, ""
    if spec.kind == MAP_PIECEWISE:
        if inst.space != SPACE_LINE:
            return False, "piecewise-affine mappings live on the line"
        return True, ""
    if spec.kind == MAP_AFFINE_2D:
        if inst.space != SPACE_PLANE:
            return False, "affine-2d mappings live in the plane"
        return True, ""
    return False, f"unknown mapping kind {spec.kind!r}"


_SEGMENT_SAMPLES = 33


def _domain_samples(inst: MetricInstance) -> tuple[list[Element], bool]:
    """Finite A verbatim; a segment A sampled evenly (endpoints included)."""
    sset = inst.set_a
    if sset.kind == SET_FINITE:
        return list(inst.elements(sset)), False
    if sset.kind == SET_SEGMENT:
        assert sset.endpoints is not None
        (ax, ay), (bx, by) = sset.endpoints
        n = _SEGMENT_SAMPLES
        return (
            [(ax + (bx - ax) * i / (n - 1), ay + (by - ay) * i / (n - 1)) for i in range(n)],
            True,
        )
    raise ValueError(f"cannot sample a {sset.kind!r} domain; truncate first")


def _membership_distance(inst: MetricInstance, sset: SpaceSet, elem: Element) -> float:
    if sset.kind == SET_PROGRESSION:
        idx = _progression_index(sset, float(elem), inst.epsilon)  # type: ignore[arg-type]
        if idx is None:
            return math.inf
        return abs(float(elem) - (sset.start + idx * sset.step))  # type: ignore[arg-type]
    return nearest_in_set(inst, sset, elem)[1]


def _progression_index(sset: SpaceSet, value: float, eps: float) -> int | None:
    """Index of ``value`` in the progression, or None if it is not a member."""
    t = (value - sset.start) / sset.step
    idx = round(t)
    if idx < 0:
        return None
    if abs(value - (sset.start + idx * sset.step)) > eps:
        return None
    return idx


def gap_distance(inst: MetricInstance) -> float:
    """The set gap d(A, B); exact for all supported set-kind combinations."""
    try:
        return set_min_distance(inst, inst.set_a, inst.set_b)
    except ValueError as exc:
        raise ValueError(f"gap is not computable: {exc}") from exc


def proximal_core(inst: MetricInstance, gap: float | None = None) -> tuple[tuple[Element, ...], tuple[Element, ...]]:
    """The cores (A0, B0): elements of each set realizing the gap.

    A must be finite (truncate progressions first).  For a continuum B the
    returned B0 lists the witness points where the gap is attained.
    """
    if inst.set_a.kind != SET_FINITE:
        raise ValueError("proximal cores need a finite A; truncate the instance first")
    if gap is None:
        gap = gap_distance(inst)
    eps = inst.epsilon
    a_elems = inst.elements(inst.set_a)

    core_a = tuple(
        sorted(
            (a for a in a_elems if abs(nearest_in_set(inst, inst.set_b, a)[1] - gap) <= eps),
            key=element_key,
        )
    )

    witnesses: list[Element] = []
    if inst.set_b.kind == SET_FINITE:
        for b in inst.elements(inst.set_b):
            d_min = min(distance(inst, a, b) for a in a_elems)
            if abs(d_min - gap) <= eps:
                witnesses.append(b)
    elif inst.set_b.kind == SET_INTERVALS:
        # On the line, the points of an interval at distance exactly `gap`
        # from a are among {a - gap, a + gap}.
        for a in a_elems:
            av = float(a)  # type: ignore[arg-type]
            for cand in (av - gap, av + gap):
                for lo, hi in inst.set_b.intervals:
                    if lo - eps <= cand <= hi + eps:
                        witnesses.append(min(max(cand, lo), hi))
    elif inst.set_b.kind == SET_SEGMENT:
        # The gap is the global minimum, and the distance from a point to a
        # segment has a unique minimizer, so the projection is the only
        # possible equality witness for each a.
        for a in a_elems:
            proj, d = nearest_in_set(inst, inst.set_b, a)
            if abs(d - gap) <= eps:
                witnesses.append(proj)
    else:
        raise ValueError(f"cannot enumerate core witnesses of a {inst.set_b.kind!r} B")

    core_b: list[Element] = []
    for w in sorted(witnesses, key=element_key):
        if not core_b or not same_element(core_b[-1], w):
            core_b.append(w)
    return core_a, tuple(core_b)


@dataclass(frozen=True)
class ProximalPairTable:
    """All admissible pairs (u, x) with d(u, Tx) = gap within epsilon, plus
    the cores and the T(A0) ⊆ B0 verdict.  Pairs are ordered by x then u
    (canonical element order), which fixes the enumeration order downstream.
    """

    gap: float
    pairs: tuple[tuple[Element, Element], ...]
    core_a: tuple[Element, ...]
    core_b: tuple[Element, ...]
    inclusion_holds: bool
    epsilon: float

    @property
    def us(self) -> tuple[Element, ...]:
        return tuple(u for u, _ in self.pairs)

    @property
    def xs(self) -> tuple[Element, ...]:
        return tuple(x for _, x in self.pairs)


def pair_table(inst: MetricInstance, spec: MappingSpec) -> ProximalPairTable:
    """Enumerate the admissible relation over A x A and check the inclusion.

    Membership of an image in B0 is tested directly from its definition —
    some element of A attains the gap against it — rather than against the
    finite witness list, which keeps the check exact for continuum B.
    """
    if inst.set_a.kind != SET_FINITE:
        raise ValueError("the pair table needs a finite A; truncate the instance first")
    gap = gap_distance(inst)
    eps = inst.epsilon
    a_sorted = sorted(inst.elements(inst.set_a), key=element_key)

    pairs: list[tuple[Element, Element]] = []
    images: dict[tuple, Element] = {}
    for x in a_sorted:
        img = spec.apply(inst, x)
        images[element_key(x)] = img
        for u in a_sorted:
            if abs(distance(inst, u, img) - gap) <= eps:
                pairs.append((u, x))

    core_a, core_b = proximal_core(inst, gap)

    def in_core_b(elem: Element) -> bool:
        return any(abs(distance(inst, a, elem) - gap) <= eps for a in a_sorted)

    inclusion = all(in_core_b(images[element_key(x)]) for x in core_a)
    return ProximalPairTable(
        gap=gap,
        pairs=tuple(pairs),
        core_a=core_a,
        core_b=core_b,
        inclusion_holds=inclusion,
        epsilon=eps,
    )


@dataclass(frozen=True)
class BoundaryEntry:
    """A retained element whose admissible partner lies beyond the cut:
    ``partner`` is in the untruncated A but not in the truncated one."""

    x: Element
    partner: float


class TruncationResult(NamedTuple):
    instance: MetricInstance
    mapping: MappingSpec
    boundary: tuple[BoundaryEntry, ...]


def truncate_instance(inst: MetricInstance, spec: MappingSpec, n_max: int) -> TruncationResult:
    """Restrict progression-generated sets to their first ``n_max`` members.

    The mapping must be in closed form (a table keyed by elements of an
    infinite set cannot be stated).  The boundary report lists retained
    elements x whose admissible partner u — a solution of
    |d(u, Tx) - gap| <= eps on the full progression — has index >= n_max and
    is therefore lost to the cut; the gap used is the truncated instance's,
    since that is what its pair table sees.
    """
    if n_max < 3:
        raise ValueError("n_max must be at least 3: the perimetric conditions need three distinct points")
    if inst.set_a.kind != SET_PROGRESSION or inst.set_b.kind != SET_PROGRESSION:
        raise ValueError("truncation applies to progression-generated sets only")
    if spec.kind == MAP_TABLE:
        raise ValueError("progression instances need a closed-form mapping, not a table")

    a_vals = [inst.set_a.start + k * inst.set_a.step for k in range(n_max)]
    b_vals = [inst.set_b.start + k * inst.set_b.step for k in range(n_max)]
    points = tuple(
        [Point(id=i, coords=(v,)) for i, v in enumerate(a_vals)]
        + [Point(id=n_max + i, coords=(v,)) for i, v in enumerate(b_vals)]
    )
    finite = MetricInstance(
        space=inst.space,
        set_a=SpaceSet.finite(range(n_max)),
        set_b=SpaceSet.finite(range(n_max, 2 * n_max)),
        points=points,
        epsilon=inst.epsilon,
        self_map=inst.self_map,
        sampled=True,
        name=inst.name,
    )

    gap = gap_distance(finite)
    eps = inst.epsilon
    boundary: list[BoundaryEntry] = []
    for x in a_vals:
        img = float(spec.apply(finite, x))  # type: ignore[arg-type]
        for cand in (img - gap, img + gap):
            idx = _progression_index(inst.set_a, cand, eps)
            if idx is not None and idx >= n_max:
                boundary.append(BoundaryEntry(x=x, partner=cand))
    return TruncationResult(finite, spec, tuple(boundary))
