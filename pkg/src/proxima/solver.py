"""Constructive best-proximity-point iteration and its brute-force oracle.

``iterate_bpp`` builds the sequence u_0, u_1, ... with
|d(u_{n+1}, T u_n) - gap| <= eps at every step, recording the consecutive
triangle perimeters t_n = d(u_n,u_{n+1}) + d(u_{n+1},u_{n+2}) + d(u_{n+2},u_n)
whose geometric decay drives the convergence proofs.  ``enumerate_bpp`` scans
A directly for points with d(x, Tx) = gap and is entirely independent of the
iteration, which makes it the oracle in tests.

Successor policy (the underlying theory only asserts existence): among all
admissible candidates, take the one closest to the current iterate, breaking
ties by canonical element order.  Every step's full candidate list is kept in
the trace so alternative policies can be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from proxima.metric import (
    SET_FINITE,
    SET_SEGMENT,
    Element,
    MetricInstance,
    distance,
    element_key,
    format_element,
    nearest_in_set,
    same_element,
)
from proxima.proximity import MappingSpec, gap_distance

TERM_CONVERGED_FIXED = "converged-fixed"
TERM_CONVERGED_CAUCHY = "converged-cauchy"
TERM_NO_SUCCESSOR = "no-proximal-successor"
TERM_LAMBDA_VIOLATION = "lambda-violation"
TERM_MAX_ITERATIONS = "max-iterations"

DEFAULT_MAX_ITER = 10_000
DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class ImageFlag:
    """An early-exit event observed on the image sequence {T u_n}:
    ``image-repeat`` when Tu_n = Tu_{n+1} (certifies u_{n+1} directly) and
    ``image-period-two`` when Tu_n = Tu_{n+2} with Tu_n != Tu_{n+1}."""

    event: str
    step: int


@dataclass(frozen=True)
class SolverTrace:
    """Everything one run of the iteration produced.

    ``perimeters[n]`` is t_n over (u_n, u_{n+1}, u_{n+2});
    ``step_distances[n]`` is d(u_n, u_{n+1}); ``candidates[n]`` lists every
    admissible successor seen at step n (the chosen one included).
    ``image_perimeters``/``image_flags`` stay empty until
    ``image_trace_diagnostics`` fills them.  ``result`` and ``residual``
    (d(result, T result) - gap) are set on convergence only.
    ``start_in_core`` records whether u_0 realized the gap against B.
    """

    iterates: tuple[Element, ...]
    step_distances: tuple[float, ...]
    perimeters: tuple[float, ...]
    candidates: tuple[tuple[Element, ...], ...]
    termination: str
    result: Element | None
    residual: float | None
    gap: float
    start_in_core: bool
    epsilon: float
    tol: float
    image_perimeters: tuple[float, ...] = ()
    image_flags: tuple[ImageFlag, ...] = ()


@dataclass(frozen=True)
class BppResult:
    """Brute-force enumeration outcome: all x in A with d(x, Tx) = gap within
    eps, their residuals d(x, Tx) - gap, and whether the theoretical
    at-most-two bound holds."""

    points: tuple[Element, ...]
    residuals: tuple[float, ...]
    count_bound_ok: bool
    gap: float


def _normalize_start(inst: MetricInstance, u0: Element) -> Element:
    """Snap the requested start onto A; reject anything beyond epsilon."""
    sset = inst.set_a
    if sset.kind == SET_FINITE:
        for e in inst.elements(sset):
            if same_element(e, u0):
                return e
        for e in inst.elements(sset):
            if distance(inst, e, u0) <= inst.epsilon:
                return e
        raise ValueError(f"start {format_element(u0)} is not an element of A")
    if sset.kind == SET_SEGMENT:
        proj, d = nearest_in_set(inst, sset, u0)
        if d > inst.epsilon:
            raise ValueError(f"start {format_element(u0)} is not on A (distance {d:g})")
        return proj
    raise ValueError(f"iteration does not support a {sset.kind!r} A; truncate first")


def _successors(inst: MetricInstance, gap: float, image: Element) -> list[Element]:
    """All admissible u with |d(u, image) - gap| <= eps, in canonical order."""
    sset = inst.set_a
    if sset.kind == SET_FINITE:
        return [
            e
            for e in sorted(inst.elements(sset), key=element_key)
            if abs(distance(inst, e, image) - gap) <= inst.epsilon
        ]
    # Segment A: the distance to the segment is minimized at the projection,
    # uniquely, and gap is the global minimum, so the projection is the only
    # possible admissible point.
    proj, d = nearest_in_set(inst, sset, image)
    return [proj] if abs(d - gap) <= inst.epsilon else []


def iterate_bpp(
    inst: MetricInstance,
    spec: MappingSpec,
    u0: Element,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> SolverTrace:
    """Run the proximal iteration from u0 until a terminal event.

    Termination cases:
    * ``converged-fixed`` — the successor repeats the current iterate exactly
      (finite A; the iterate is itself a best proximity point candidate);
    * ``converged-cauchy`` — consecutive iterates are within ``tol`` without
      exact repetition (the continuum case, and near-ties on finite A);
    * ``lambda-violation`` — u_{n+2} = u_n with u_{n+1} != u_n, the period-2
      pattern that defeats uniqueness;
    * ``no-proximal-successor`` — no admissible successor exists, which
      diagnoses a failure of the T(A0) ⊆ B0 hypothesis;
    * ``max-iterations`` — the step budget ran out.

    The start may be any element of A (within eps); whether it lies in the
    core A0 is recorded as ``start_in_core`` rather than enforced, since a
    run from outside the core is itself informative (the admissibility of
    u_1 only needs T u_0).
    """
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    if tol <= 0:
        raise ValueError("tol must be positive")

    u0 = _normalize_start(inst, u0)
    gap = gap_distance(inst)
    eps = inst.epsilon
    start_in_core = abs(nearest_in_set(inst, inst.set_b, u0)[1] - gap) <= eps

    iterates: list[Element] = [u0]
    steps: list[float] = []
    cand_log: list[tuple[Element, ...]] = []
    termination = TERM_MAX_ITERATIONS

    for _ in range(max_iter):
        current = iterates[-1]
        image = spec.apply(inst, current)
        cands = _successors(inst, gap, image)
        cand_log.append(tuple(cands))
        if not cands:
            termination = TERM_NO_SUCCESSOR
            break
        nxt = min(cands, key=lambda e: (distance(inst, e, current), element_key(e)))
        iterates.append(nxt)
        d_step = distance(inst, current, nxt)
        steps.append(d_step)

        exact_repeat = inst.set_a.kind == SET_FINITE and same_element(nxt, current)
        if exact_repeat:
            termination = TERM_CONVERGED_FIXED
            break
        if len(iterates) >= 3:
            back_two = iterates[-3]
            returned = (
                same_element(nxt, back_two)
                if inst.set_a.kind == SET_FINITE
                else distance(inst, nxt, back_two) <= eps
            )
            if returned and d_step > eps:
                termination = TERM_LAMBDA_VIOLATION
                break
        if d_step <= tol:
            termination = TERM_CONVERGED_CAUCHY
            break

    perims = _consecutive_perimeters(inst, iterates)
    result: Element | None = None
    residual: float | None = None
    if termination in (TERM_CONVERGED_FIXED, TERM_CONVERGED_CAUCHY):
        result = iterates[-1]
        residual = distance(inst, result, spec.apply(inst, result)) - gap

    return SolverTrace(
        iterates=tuple(iterates),
        step_distances=tuple(steps),
        perimeters=perims,
        candidates=tuple(cand_log),
        termination=termination,
        result=result,
        residual=residual,
        gap=gap,
        start_in_core=start_in_core,
        epsilon=eps,
        tol=tol,
    )


def _consecutive_perimeters(inst: MetricInstance, elems) -> tuple[float, ...]:
    return tuple(
        distance(inst, elems[n], elems[n + 1])
        + distance(inst, elems[n + 1], elems[n + 2])
        + distance(inst, elems[n + 2], elems[n])
        for n in range(len(elems) - 2)
    )


def enumerate_bpp(inst: MetricInstance, spec: MappingSpec) -> BppResult:
    """Scan all of (finite) A for points with d(x, Tx) = gap within eps."""
    if inst.set_a.kind != SET_FINITE:
        raise ValueError("enumeration needs a finite A; truncate the instance first")
    gap = gap_distance(inst)
    points: list[Element] = []
    residuals: list[float] = []
    for x in sorted(inst.elements(inst.set_a), key=element_key):
        r = distance(inst, x, spec.apply(inst, x)) - gap
        if abs(r) <= inst.epsilon:
            points.append(x)
            residuals.append(r)
    return BppResult(
        points=tuple(points),
        residuals=tuple(residuals),
        count_bound_ok=len(points) <= 2,
        gap=gap,
    )


@dataclass(frozen=True)
class DecayReport:
    """Per-index verdicts for the perimeter-decay laws of a trace under a
    proposed contraction constant alpha.

    For each n >= 1 (indices into the trace's perimeter list):
    * ``ratio_ok[n-1]`` — t_n <= alpha * t_{n-1} + eps (vacuously true when
      t_{n-1} <= eps);
    * ``geometric_ok[n-1]`` — t_n <= alpha^n * t_0 + eps (the telescoped
      chain);
    * ``edge_ok[n-1]`` — d(u_n, u_{n+1}) <= t_n + eps (an edge never exceeds
      its triangle's perimeter).
    """

    alpha: float
    ratio_ok: tuple[bool, ...]
    geometric_ok: tuple[bool, ...]
    edge_ok: tuple[bool, ...]

    @property
    def passed(self) -> bool:
        return all(self.ratio_ok) and all(self.geometric_ok) and all(self.edge_ok)


def perimeter_decay_check(trace: SolverTrace, alpha: float) -> DecayReport:
    """Check the decay laws on an existing trace; needs >= 4 iterates so that
    at least two consecutive perimeters exist."""
    if len(trace.iterates) < 4:
        raise ValueError("trace too short: need at least 4 iterates for a decay check")
    eps = trace.epsilon
    p = trace.perimeters
    ratio_ok = []
    geometric_ok = []
    edge_ok = []
    for n in range(1, len(p)):
        ratio_ok.append(p[n] <= alpha * p[n - 1] + eps if p[n - 1] > eps else True)
        geometric_ok.append(p[n] <= (alpha ** n) * p[0] + eps)
        edge_ok.append(trace.step_distances[n] <= p[n] + eps)
    return DecayReport(
        alpha=alpha,
        ratio_ok=tuple(ratio_ok),
        geometric_ok=tuple(geometric_ok),
        edge_ok=tuple(edge_ok),
    )


def image_trace_diagnostics(
    inst: MetricInstance, spec: MappingSpec, trace: SolverTrace
) -> SolverTrace:
    """Return the trace augmented with image-side perimeters and early-exit
    flags over {T u_n} (see ImageFlag)."""
    images = [spec.apply(inst, u) for u in trace.iterates]
    eps = trace.epsilon
    perims = _consecutive_perimeters(inst, images)
    flags: list[ImageFlag] = []
    for n in range(len(images) - 1):
        if distance(inst, images[n], images[n + 1]) <= eps:
            flags.append(ImageFlag(event="image-repeat", step=n))
    for n in range(len(images) - 2):
        if (
            distance(inst, images[n], images[n + 2]) <= eps
            and distance(inst, images[n], images[n + 1]) > eps
        ):
            flags.append(ImageFlag(event="image-period-two", step=n))
    return replace(trace, image_perimeters=perims, image_flags=tuple(flags))
