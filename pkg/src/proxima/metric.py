"""Metric-space instances built from two sets and a distance.

An instance couples a ground space (the real line, the plane, or an explicit
distance matrix over named points) with two subsets ``A`` and ``B``.  Sets are
either finite collections of registered points or simple continuum shapes
(closed intervals on the line, a segment in the plane, an arithmetic
progression).  Everything downstream — proximal pair tables, contraction
verification, the iteration — consumes these instances.

Elements are plain values rather than wrapper objects: a float on the line,
an ``(x, y)`` tuple in the plane, an integer point id in matrix spaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

Element = Union[float, tuple[float, float], int]

SPACE_LINE = "euclidean-1d"
SPACE_PLANE = "euclidean-2d"
SPACE_MATRIX = "matrix"
SPACE_KINDS = (SPACE_LINE, SPACE_PLANE, SPACE_MATRIX)

SET_FINITE = "finite"
SET_INTERVALS = "intervals"
SET_SEGMENT = "segment"
SET_PROGRESSION = "progression"
SET_KINDS = (SET_FINITE, SET_INTERVALS, SET_SEGMENT, SET_PROGRESSION)

DEFAULT_EPSILON = 1e-9


@dataclass(frozen=True)
class Point:
    """A registered point: integer id, optional coordinates, optional label.

    Matrix-space points carry no coordinates (``coords is None``); their
    geometry lives entirely in the instance's distance matrix.
    """

    id: int
    coords: tuple[float, ...] | None = None
    label: str = ""


@dataclass(frozen=True)
class SpaceSet:
    """One of the two sets of an instance.

    kind:
        * ``finite`` — ``members`` lists point ids from the registry.
        * ``intervals`` — disjoint closed intervals on the line.
        * ``segment`` — a closed segment in the plane, given by endpoints.
        * ``progression`` — an infinite arithmetic progression
          ``start, start+step, start+2*step, ...`` on the line; it must be
          truncated to a finite set before any enumeration runs on it.
    """

    kind: str
    members: tuple[int, ...] = ()
    intervals: tuple[tuple[float, float], ...] = ()
    endpoints: tuple[tuple[float, float], tuple[float, float]] | None = None
    start: float = 0.0
    step: float = 0.0

    @classmethod
    def finite(cls, members: Iterable[int]) -> "SpaceSet":
        return cls(kind=SET_FINITE, members=tuple(int(m) for m in members))

    @classmethod
    def of_intervals(cls, intervals: Iterable[tuple[float, float]]) -> "SpaceSet":
        return cls(
            kind=SET_INTERVALS,
            intervals=tuple((float(lo), float(hi)) for lo, hi in intervals),
        )

    @classmethod
    def of_segment(cls, p: tuple[float, float], q: tuple[float, float]) -> "SpaceSet":
        return cls(kind=SET_SEGMENT, endpoints=((float(p[0]), float(p[1])), (float(q[0]), float(q[1]))))

    @classmethod
    def of_progression(cls, start: float, step: float) -> "SpaceSet":
        return cls(kind=SET_PROGRESSION, start=float(start), step=float(step))

    @property
    def is_finite(self) -> bool:
        return self.kind == SET_FINITE


@dataclass(frozen=True)
class CheckResult:
    """A single named validation check with a human-readable detail."""

    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def merged(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.checks + other.checks)


@dataclass(frozen=True, eq=False)
class MetricInstance:
    """Two sets in a common ground space, plus the tolerance used throughout.

    ``epsilon`` is the comparison tolerance for *exact* conditions (equality
    of distances, membership at the boundary); it is distinct from any solver
    convergence tolerance.  ``self_map`` marks instances where ``A`` and ``B``
    are the same set, enabling the fixed-point specialisations.  ``sampled``
    marks instances obtained by truncating or sampling a continuum, so that
    downstream verdicts can be labelled as sample-based.
    """

    space: str
    set_a: SpaceSet
    set_b: SpaceSet
    points: tuple[Point, ...] = ()
    matrix: np.ndarray | None = None
    epsilon: float = DEFAULT_EPSILON
    self_map: bool = False
    sampled: bool = False
    name: str = ""
    _by_id: dict = field(default_factory=dict, repr=False, init=False)

    def __post_init__(self):
        self._by_id.update({p.id: p for p in self.points})

    @property
    def dim(self) -> int | None:
        """Coordinate dimension, or None for matrix spaces."""
        if self.space == SPACE_LINE:
            return 1
        if self.space == SPACE_PLANE:
            return 2
        return None

    def point(self, point_id: int) -> Point:
        try:
            return self._by_id[point_id]
        except KeyError:
            raise KeyError(f"no point with id {point_id} in registry") from None

    def element(self, point_id: int) -> Element:
        """The plain-value element for a registered point."""
        p = self.point(point_id)
        if self.space == SPACE_MATRIX:
            return p.id
        if p.coords is None:
            raise ValueError(f"point {point_id} has no coordinates in a coordinate space")
        if self.space == SPACE_LINE:
            return p.coords[0]
        return (p.coords[0], p.coords[1])

    def elements(self, sset: SpaceSet) -> tuple[Element, ...]:
        """All elements of a finite set, in registry-member order."""
        if sset.kind != SET_FINITE:
            raise ValueError(f"cannot enumerate elements of a {sset.kind!r} set")
        return tuple(self.element(m) for m in sset.members)

    def label_of(self, elem: Element) -> str:
        """Best-effort label for display: the registered label if one matches."""
        for p in self.points:
            if p.label and same_element(self._point_element(p), elem):
                return p.label
        return format_element(elem)

    def _point_element(self, p: Point) -> Element:
        if self.space == SPACE_MATRIX:
            return p.id
        if p.coords is None:
            return p.id
        return p.coords[0] if self.space == SPACE_LINE else (p.coords[0], p.coords[1])


def element_key(elem: Element) -> tuple[float, ...]:
    """Canonical sort key: coordinates lexicographically, ids as 1-tuples."""
    if isinstance(elem, tuple):
        return tuple(float(v) for v in elem)
    return (float(elem),)


def same_element(a: Element, b: Element) -> bool:
    """Exact identity of elements (no tolerance)."""
    if isinstance(a, tuple) != isinstance(b, tuple):
        return False
    return a == b


def format_element(elem: Element) -> str:
    if isinstance(elem, tuple):
        return "(" + ", ".join(f"{v:g}" for v in elem) + ")"
    if isinstance(elem, float):
        return f"{elem:g}"
    return f"#{elem}"


def distance(inst: MetricInstance, p: Element, q: Element) -> float:
    """Distance between two elements of the instance's ground space."""
    if inst.space == SPACE_MATRIX:
        if inst.matrix is None:
            raise ValueError("matrix space without a distance matrix")
        return float(inst.matrix[int(p), int(q)])
    if inst.space == SPACE_LINE:
        return abs(float(p) - float(q))
    px, py = p  # type: ignore[misc]
    qx, qy = q  # type: ignore[misc]
    dx = px - qx
    dy = py - qy
    return math.sqrt(dx * dx + dy * dy)


def pairwise_distances(
    inst: MetricInstance,
    ps: Sequence[Element],
    qs: Sequence[Element],
) -> np.ndarray:
    """Dense distance matrix D[i, j] = d(ps[i], qs[j]).

    The euclidean branches use the same sqrt(dx*dx + dy*dy) arithmetic as the
    scalar path, so entries agree bit-for-bit with ``distance``.
    """
    if inst.space == SPACE_MATRIX:
        assert inst.matrix is not None
        ip = np.asarray([int(p) for p in ps], dtype=np.intp)
        iq = np.asarray([int(q) for q in qs], dtype=np.intp)
        return np.ascontiguousarray(inst.matrix[np.ix_(ip, iq)], dtype=np.float64)
    if inst.space == SPACE_LINE:
        ap = np.asarray([float(p) for p in ps], dtype=np.float64)
        aq = np.asarray([float(q) for q in qs], dtype=np.float64)
        return np.abs(ap[:, None] - aq[None, :])
    # reshape keeps the 2-column layout even for empty inputs
    ap = np.asarray([(p[0], p[1]) for p in ps], dtype=np.float64).reshape(len(ps), 2)  # type: ignore[index]
    aq = np.asarray([(q[0], q[1]) for q in qs], dtype=np.float64).reshape(len(qs), 2)  # type: ignore[index]
    dx = ap[:, 0:1] - aq[None, :, 0]
    dy = ap[:, 1:2] - aq[None, :, 1]
    return np.sqrt(dx * dx + dy * dy)


def _clamp(v: float, lo: float, hi: float) -> float:
    return lo if v < lo else hi if v > hi else v


def _project_point_segment(
    a: tuple[float, float], b: tuple[float, float], q: tuple[float, float]
) -> tuple[float, float]:
    """Closest point to q on the closed segment [a, b]."""
    abx, aby = b[0] - a[0], b[1] - a[1]
    denom = abx * abx + aby * aby
    if denom == 0.0:
        return a
    t = _clamp(((q[0] - a[0]) * abx + (q[1] - a[1]) * aby) / denom, 0.0, 1.0)
    return (a[0] + t * abx, a[1] + t * aby)


def _orient(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_box(p, a, b) -> bool:
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _segments_intersect(p1, p2, q1, q2) -> bool:
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
        return True
    if d1 == 0 and _on_box(p1, q1, q2):
        return True
    if d2 == 0 and _on_box(p2, q1, q2):
        return True
    if d3 == 0 and _on_box(q1, p1, p2):
        return True
    if d4 == 0 and _on_box(q2, p1, p2):
        return True
    return False


def _dist2(p, q) -> float:
    dx, dy = p[0] - q[0], p[1] - q[1]
    return math.sqrt(dx * dx + dy * dy)


def _segment_segment_distance(p1, p2, q1, q2) -> float:
    if _segments_intersect(p1, p2, q1, q2):
        return 0.0
    best = math.inf
    for point, (sa, sb) in (
        (p1, (q1, q2)),
        (p2, (q1, q2)),
        (q1, (p1, p2)),
        (q2, (p1, p2)),
    ):
        best = min(best, _dist2(point, _project_point_segment(sa, sb, point)))
    return best


def nearest_in_set(inst: MetricInstance, sset: SpaceSet, q: Element) -> tuple[Element, float]:
    """Closest element of a set to ``q`` and its distance.

    Deterministic on ties: finite sets prefer the smaller element key, interval
    unions prefer the smaller witness value.  Progressions are rejected —
    truncate them first.
    """
    if sset.kind == SET_FINITE:
        best_elem: Element | None = None
        best_d = math.inf
        for m in sset.members:
            e = inst.element(m)
            d = distance(inst, e, q)
            if d < best_d or (d == best_d and best_elem is not None and element_key(e) < element_key(best_elem)):
                best_elem, best_d = e, d
        if best_elem is None:
            raise ValueError("nearest_in_set on an empty set")
        return best_elem, best_d
    if sset.kind == SET_INTERVALS:
        x = float(q)  # type: ignore[arg-type]
        best_v = math.inf
        best_d = math.inf
        for lo, hi in sset.intervals:
            v = _clamp(x, lo, hi)
            d = abs(x - v)
            if d < best_d or (d == best_d and v < best_v):
                best_v, best_d = v, d
        if not sset.intervals:
            raise ValueError("nearest_in_set on an empty interval union")
        return best_v, best_d
    if sset.kind == SET_SEGMENT:
        assert sset.endpoints is not None
        a, b = sset.endpoints
        proj = _project_point_segment(a, b, q)  # type: ignore[arg-type]
        return proj, _dist2(proj, q)  # type: ignore[arg-type]
    raise ValueError(f"nearest_in_set does not support {sset.kind!r} sets; truncate first")


def set_min_distance(inst: MetricInstance, s1: SpaceSet, s2: SpaceSet) -> float:
    """Infimum of d(p, q) over p in s1, q in s2 (attained for these shapes)."""
    if s1.kind == SET_FINITE:
        best = math.inf
        for m in s1.members:
            best = min(best, nearest_in_set(inst, s2, inst.element(m))[1])
        return best
    if s2.kind == SET_FINITE:
        return set_min_distance(inst, s2, s1)
    if s1.kind == SET_INTERVALS and s2.kind == SET_INTERVALS:
        best = math.inf
        for lo1, hi1 in s1.intervals:
            for lo2, hi2 in s2.intervals:
                if hi1 < lo2:
                    best = min(best, lo2 - hi1)
                elif hi2 < lo1:
                    best = min(best, lo1 - hi2)
                else:
                    return 0.0
        return best
    if s1.kind == SET_SEGMENT and s2.kind == SET_SEGMENT:
        assert s1.endpoints is not None and s2.endpoints is not None
        return _segment_segment_distance(*s1.endpoints, *s2.endpoints)
    raise ValueError(f"set distance between {s1.kind!r} and {s2.kind!r} is not supported; truncate first")


_ALLOWED_SET_KINDS = {
    SPACE_LINE: {SET_FINITE, SET_INTERVALS, SET_PROGRESSION},
    SPACE_PLANE: {SET_FINITE, SET_SEGMENT},
    SPACE_MATRIX: {SET_FINITE},
}


def validate_instance(inst: MetricInstance) -> ValidationReport:
    """Structural checks: space/set compatibility, registry integrity, metric
    axioms for matrix spaces, well-formed shapes, non-emptiness, disjointness
    (unless the instance is declared a self-map one)."""
    checks: list[CheckResult] = []
    eps = inst.epsilon

    def add(name: str, passed: bool, detail: str = "") -> None:
        checks.append(CheckResult(name, passed, detail))

    add("space-kind", inst.space in SPACE_KINDS, f"space={inst.space!r}")

    ids = [p.id for p in inst.points]
    add("registry-ids-unique", len(ids) == len(set(ids)))
    if inst.space == SPACE_MATRIX:
        coords_ok = all(p.coords is None for p in inst.points)
        add("registry-coords", coords_ok,
            "" if coords_ok else "matrix-space points must not carry coordinates")
    else:
        want = 1 if inst.space == SPACE_LINE else 2
        bad = [p.id for p in inst.points if p.coords is None or len(p.coords) != want]
        add("registry-coords", not bad, f"points with wrong arity: {bad}" if bad else "")

    if inst.space == SPACE_MATRIX:
        m = inst.matrix
        if m is None or m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != len(inst.points):
            add("matrix-shape", False, "matrix must be square over the point registry")
        else:
            add("matrix-shape", True)
            add("matrix-nonnegative", bool(np.all(m >= -eps)))
            add("matrix-zero-diagonal", bool(np.all(np.abs(np.diag(m)) <= eps)))
            add("matrix-symmetric", bool(np.all(np.abs(m - m.T) <= eps)))
            through = np.min(m[:, :, None] + m[None, :, :], axis=1)
            tri_ok = bool(np.all(m <= through + eps))
            add("matrix-triangle", tri_ok,
                "" if tri_ok else "d(i,j) <= d(i,k) + d(k,j) must hold for all triples")
            ident_ok = _matrix_identity_ok(m, eps)
            add("matrix-identity", ident_ok,
                "" if ident_ok else "off-diagonal distances must be positive")
    else:
        add("matrix-absent", inst.matrix is None, "coordinate spaces take no matrix")

    for side, sset in (("a", inst.set_a), ("b", inst.set_b)):
        allowed = _ALLOWED_SET_KINDS.get(inst.space, set())
        kind_ok = sset.kind in allowed
        add(f"set-{side}-kind", kind_ok,
            f"kind {sset.kind!r}" if kind_ok else f"{sset.kind!r} not usable in {inst.space!r}")
        add(f"set-{side}-nonempty", _set_nonempty(sset))
        add(f"set-{side}-wellformed", *_set_wellformed(inst, sset))

    if inst.self_map:
        equal_ok = _sets_equal(inst, inst.set_a, inst.set_b)
        add("self-map-sets-equal", equal_ok,
            "" if equal_ok else "a self-map instance must have identical sets")
    else:
        ok_so_far = all(c.passed for c in checks)
        if ok_so_far and _disjointness_checkable(inst.set_a, inst.set_b):
            dist = set_min_distance(inst, inst.set_a, inst.set_b)
            add("sets-disjoint", dist > eps, f"d(A, B) = {dist:.6g}")
        else:
            add("sets-disjoint", True, "skipped: requires truncation or a valid structure")
    return ValidationReport(tuple(checks))


def _matrix_identity_ok(m: np.ndarray, eps: float) -> bool:
    n = m.shape[0]
    off = m[~np.eye(n, dtype=bool)]
    return bool(np.all(off > eps)) if off.size else True


def _set_nonempty(sset: SpaceSet) -> bool:
    if sset.kind == SET_FINITE:
        return len(sset.members) > 0
    if sset.kind == SET_INTERVALS:
        return len(sset.intervals) > 0
    if sset.kind == SET_SEGMENT:
        return sset.endpoints is not None
    return True  # progressions are infinite


def _set_wellformed(inst: MetricInstance, sset: SpaceSet) -> tuple[bool, str]:
    if sset.kind == SET_FINITE:
        missing = [m for m in sset.members if m not in inst._by_id]
        if missing:
            return False, f"members not in registry: {missing}"
        if len(set(sset.members)) != len(sset.members):
            return False, "duplicate members"
        elems = [inst.element(m) for m in sset.members]
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                if inst.space != SPACE_MATRIX and distance(inst, elems[i], elems[j]) <= inst.epsilon:
                    return False, f"members {sset.members[i]} and {sset.members[j]} coincide"
        return True, ""
    if sset.kind == SET_INTERVALS:
        ivs = sorted(sset.intervals)
        for lo, hi in ivs:
            if lo > hi:
                return False, f"interval [{lo}, {hi}] is inverted"
        for (lo1, hi1), (lo2, hi2) in zip(ivs, ivs[1:]):
            if hi1 >= lo2:
                return False, "intervals overlap"
        return True, ""
    if sset.kind == SET_SEGMENT:
        assert sset.endpoints is not None
        a, b = sset.endpoints
        if a == b:
            return False, "segment endpoints coincide"
        return True, ""
    if sset.kind == SET_PROGRESSION:
        if sset.step <= 0:
            return False, "progression step must be positive"
        return True, ""
    return False, f"unknown set kind {sset.kind!r}"


def _sets_equal(inst: MetricInstance, s1: SpaceSet, s2: SpaceSet) -> bool:
    if s1.kind != s2.kind:
        return False
    if s1.kind == SET_FINITE:
        try:
            e1 = sorted(map(element_key, inst.elements(s1)))
            e2 = sorted(map(element_key, inst.elements(s2)))
        except (KeyError, ValueError):
            return False
        return e1 == e2
    return s1 == s2


def _disjointness_checkable(s1: SpaceSet, s2: SpaceSet) -> bool:
    if SET_PROGRESSION in (s1.kind, s2.kind):
        return False
    mixable = {(SET_FINITE, SET_FINITE), (SET_FINITE, SET_INTERVALS), (SET_INTERVALS, SET_FINITE),
               (SET_INTERVALS, SET_INTERVALS), (SET_FINITE, SET_SEGMENT), (SET_SEGMENT, SET_FINITE),
               (SET_SEGMENT, SET_SEGMENT)}
    return (s1.kind, s2.kind) in mixable
