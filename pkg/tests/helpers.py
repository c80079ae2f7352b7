"""Shared test utilities: finite-instance builders, naive reference oracles,
and randomized instance generators.

The oracles recompute gap, pair tables, contraction status, the swapped-pair
condition, and best proximity points with plain itertools loops that share no
code with the package kernels, so agreement between the two is meaningful
evidence of correctness.
"""

from __future__ import annotations

import itertools
import random

from proxima.metric import (
    DEFAULT_EPSILON,
    SPACE_LINE,
    SPACE_MATRIX,
    SPACE_PLANE,
    MetricInstance,
    Point,
    SpaceSet,
    distance,
    element_key,
    same_element,
)
from proxima.proximity import MAP_TABLE, MappingSpec


# ---------------------------------------------------------------------------
# instance builders


def line_instance(
    a_values,
    b_values,
    mapping=None,
    *,
    self_map=False,
    epsilon=DEFAULT_EPSILON,
    name="test-line",
):
    """Finite 1-d instance from plain numbers; ``mapping`` is value -> value."""
    a_values = [float(v) for v in a_values]
    b_values = [float(v) for v in b_values]
    points: list[Point] = []
    ids_a: list[int] = []
    ids_b: list[int] = []
    for v in a_values:
        ids_a.append(len(points))
        points.append(Point(id=len(points), coords=(v,)))
    if self_map and a_values == b_values:
        ids_b = ids_a
    else:
        for v in b_values:
            ids_b.append(len(points))
            points.append(Point(id=len(points), coords=(v,)))
    inst = MetricInstance(
        space=SPACE_LINE,
        set_a=SpaceSet.finite(ids_a),
        set_b=SpaceSet.finite(ids_b),
        points=tuple(points),
        epsilon=epsilon,
        self_map=self_map,
        name=name,
    )
    table = tuple((float(k), float(v)) for k, v in (mapping or {}).items())
    return inst, MappingSpec(kind=MAP_TABLE, table=table)


def plane_instance(
    a_coords,
    b_coords,
    mapping=None,
    *,
    self_map=False,
    epsilon=DEFAULT_EPSILON,
    name="test-plane",
):
    """Finite 2-d instance; ``mapping`` is (x, y) -> (x, y)."""

    def canon(c):
        return (float(c[0]), float(c[1]))

    a_coords = [canon(c) for c in a_coords]
    b_coords = [canon(c) for c in b_coords]
    points: list[Point] = []
    ids_a: list[int] = []
    ids_b: list[int] = []
    for c in a_coords:
        ids_a.append(len(points))
        points.append(Point(id=len(points), coords=c))
    if self_map and a_coords == b_coords:
        ids_b = ids_a
    else:
        for c in b_coords:
            ids_b.append(len(points))
            points.append(Point(id=len(points), coords=c))
    inst = MetricInstance(
        space=SPACE_PLANE,
        set_a=SpaceSet.finite(ids_a),
        set_b=SpaceSet.finite(ids_b),
        points=tuple(points),
        epsilon=epsilon,
        self_map=self_map,
        name=name,
    )
    table = tuple((canon(k), canon(v)) for k, v in (mapping or {}).items())
    return inst, MappingSpec(kind=MAP_TABLE, table=table)


def matrix_instance(
    matrix,
    a_ids,
    b_ids,
    mapping=None,
    *,
    self_map=False,
    epsilon=DEFAULT_EPSILON,
    name="test-matrix",
):
    """Finite matrix-space instance; elements are point ids, ``mapping`` id -> id."""
    import numpy as np

    m = np.asarray(matrix, dtype=float)
    points = tuple(Point(id=i) for i in range(m.shape[0]))
    inst = MetricInstance(
        space=SPACE_MATRIX,
        set_a=SpaceSet.finite(list(a_ids)),
        set_b=SpaceSet.finite(list(b_ids)),
        points=points,
        matrix=m,
        epsilon=epsilon,
        self_map=self_map,
        name=name,
    )
    table = tuple((int(k), int(v)) for k, v in (mapping or {}).items())
    return inst, MappingSpec(kind=MAP_TABLE, table=table)


# ---------------------------------------------------------------------------
# naive reference oracles (finite instances only)


def oracle_gap(inst: MetricInstance) -> float:
    elems_a = inst.elements(inst.set_a)
    elems_b = inst.elements(inst.set_b)
    return min(distance(inst, a, b) for a in elems_a for b in elems_b)


def oracle_pairs(inst: MetricInstance, spec: MappingSpec):
    """All admissible (u, x): u, x in A with d(u, Tx) equal to the gap."""
    gap = oracle_gap(inst)
    elems_a = sorted(inst.elements(inst.set_a), key=element_key)
    return gap, [
        (u, x)
        for x in elems_a
        for u in elems_a
        if abs(distance(inst, u, spec.apply(inst, x)) - gap) <= inst.epsilon
    ]


def _perimeter(inst, a, b, c) -> float:
    # same summation order as the scan kernels: (i,j) + (j,l) + (i,l)
    return distance(inst, a, b) + distance(inst, b, c) + distance(inst, a, c)


def oracle_verify(inst, spec, pairs, *, arity: int, image_side: bool):
    """Reference contraction check over the given admissible pairs.

    Returns (status, alpha, checked) with the same semantics as the package
    verifiers: vacuous when nothing is admitted, not-contraction when some
    combination has ratio >= 1 or a ~0 right side against a positive left.
    """
    eps = inst.epsilon
    checked = 0
    best = -1.0
    refuted = False
    for combo in itertools.combinations(range(len(pairs)), arity):
        us = [pairs[i][0] for i in combo]
        xs = [pairs[i][1] for i in combo]
        if image_side:
            us = [spec.apply(inst, u) for u in us]
            xs = [spec.apply(inst, x) for x in xs]
        if any(
            same_element(xs[i], xs[j])
            for i in range(arity)
            for j in range(i + 1, arity)
        ):
            continue
        checked += 1
        if arity == 2:
            lhs = distance(inst, us[0], us[1])
            rhs = distance(inst, xs[0], xs[1])
        else:
            lhs = _perimeter(inst, *us)
            rhs = _perimeter(inst, *xs)
        if rhs > eps:
            ratio = lhs / rhs
            best = max(best, ratio)
            if ratio >= 1.0:
                refuted = True
        elif lhs > eps:
            refuted = True
    if checked == 0:
        return "vacuous", None, 0
    if refuted:
        return "not-contraction", None, checked
    return "contraction", max(best, 0.0), checked


def oracle_lambda_violated(inst, spec) -> bool:
    """Distinct x, y in A with d(x, Ty) and d(y, Tx) both equal to the gap."""
    gap = oracle_gap(inst)
    eps = inst.epsilon
    elems = inst.elements(inst.set_a)
    for x, y in itertools.combinations(elems, 2):
        if (
            abs(distance(inst, x, spec.apply(inst, y)) - gap) <= eps
            and abs(distance(inst, y, spec.apply(inst, x)) - gap) <= eps
        ):
            return True
    return False


def oracle_best_proximity(inst, spec):
    """All x in A with d(x, Tx) equal to the gap, sorted canonically."""
    gap = oracle_gap(inst)
    return sorted(
        (
            x
            for x in inst.elements(inst.set_a)
            if abs(distance(inst, x, spec.apply(inst, x)) - gap) <= inst.epsilon
        ),
        key=element_key,
    )


def oracle_period_two(inst, spec):
    """Two-cycles of a finite self-map, as (smaller, larger) element pairs."""
    elems = inst.elements(inst.set_a)
    out = []
    for x in elems:
        y = spec.apply(inst, x)
        if same_element(x, y):
            continue
        if same_element(spec.apply(inst, y), x) and element_key(x) < element_key(y):
            out.append((x, y))
    return sorted(out, key=lambda p: element_key(p[0]))


# ---------------------------------------------------------------------------
# randomized instance generators


def _random_map(rng: random.Random, a_elems, b_elems):
    style = rng.random()
    if style < 0.4:
        img = rng.choice(b_elems)
        return {x: img for x in a_elems}
    if style < 0.65:
        img1, img2 = rng.choice(b_elems), rng.choice(b_elems)
        return {x: (img1 if rng.random() < 0.5 else img2) for x in a_elems}
    return {x: rng.choice(b_elems) for x in a_elems}


def random_line_pair(rng: random.Random):
    values = rng.sample(range(-12, 13), rng.randint(5, 16))
    k = rng.randint(2, min(8, len(values) - 2))
    m = rng.randint(2, min(8, len(values) - k))
    a = [float(v) for v in values[:k]]
    b = [float(v) for v in values[k : k + m]]
    return line_instance(a, b, _random_map(rng, a, b), name="random-line")


def random_plane_pair(rng: random.Random):
    grid = [(float(x), float(y)) for x in range(-6, 7) for y in range(-6, 7)]
    pts = rng.sample(grid, rng.randint(5, 16))
    k = rng.randint(2, min(8, len(pts) - 2))
    m = rng.randint(2, min(8, len(pts) - k))
    a = pts[:k]
    b = pts[k : k + m]
    return plane_instance(a, b, _random_map(rng, a, b), name="random-plane")


def ladder_line_pair(rng: random.Random):
    """Contraction-rich family: a chain in A mapped one rung down."""
    a0 = float(rng.randint(-5, 5))
    a = [a0]
    for _ in range(rng.randint(2, 5)):
        a.append(a[-1] + rng.randint(3, 9))
    mapping = {a[0]: a[0] + 1.0}
    for k in range(1, len(a)):
        mapping[a[k]] = a[k - 1] - 1.0
    b = sorted(set(mapping.values()))
    return line_instance(a, b, mapping, name="ladder-line")


def ladder_plane_pair(rng: random.Random):
    """Geometric chain on a horizontal line, mapped by x -> x/s one level down."""
    s = rng.choice((2, 4, 5, 10))
    xs = [0.0] + [float(s**k) for k in range(1, rng.randint(3, 5))]
    a = [(x, 1.0) for x in xs]
    mapping = {(x, 1.0): (x / s, 0.0) for x in xs}
    b = sorted(set(mapping.values()))
    return plane_instance(a, b, mapping, name="ladder-plane")


def random_disjoint_pair(rng: random.Random):
    """Mixing distribution over the generator families above."""
    roll = rng.random()
    if roll < 0.35:
        return random_line_pair(rng)
    if roll < 0.70:
        return random_plane_pair(rng)
    if roll < 0.85:
        return ladder_line_pair(rng)
    return ladder_plane_pair(rng)


def random_selfmap_pair(rng: random.Random):
    """Finite self-map on the line, biased toward contractive and cyclic maps."""
    values = sorted(rng.sample(range(-8, 9), rng.randint(3, 7)))
    elems = [float(v) for v in values]
    style = rng.random()
    if style < 0.3:
        img = rng.choice(elems)
        mapping = {e: img for e in elems}
    elif style < 0.55:
        mapping = {e: elems[i // 2] for i, e in enumerate(elems)}
    elif style < 0.8:
        perm = elems[:]
        rng.shuffle(perm)
        mapping = dict(zip(elems, perm))
    else:
        mapping = {e: rng.choice(elems) for e in elems}
    return line_instance(elems, elems, mapping, self_map=True, name="random-selfmap")
