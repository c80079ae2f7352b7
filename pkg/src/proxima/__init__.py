"""Best-proximity-point analysis for two-set metric instances.

The package represents instances (two sets in a common metric space plus a
mapping from one to the other), enumerates the admissible proximal-pair
relation, verifies the perimetric and plain proximal contraction conditions
exhaustively, runs the constructive iteration toward best proximity points,
and cross-checks it against a brute-force enumerator.  A bundled corpus of
instance files with golden expectations exercises every piece end to end.
"""

from proxima.metric import (
    DEFAULT_EPSILON,
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
    pairwise_distances,
    same_element,
    set_min_distance,
    validate_instance,
)
from proxima.proximity import (
    AffinePiece,
    BoundaryEntry,
    MappingSpec,
    ProximalPairTable,
    TruncationResult,
    gap_distance,
    pair_table,
    proximal_core,
    truncate_instance,
    validate_mapping,
)
from proxima.verify import (
    LambdaReport,
    PairWitness,
    TripleWitness,
    VerificationReport,
    check_condition_lambda,
    detect_period_two,
    verify_perimetric_first,
    verify_perimetric_second,
    verify_proximal_first,
    verify_proximal_second,
    verify_triangle_perimeter_selfmap,
)
from proxima.solver import (
    BppResult,
    DecayReport,
    ImageFlag,
    SolverTrace,
    enumerate_bpp,
    image_trace_diagnostics,
    iterate_bpp,
    perimeter_decay_check,
)
from proxima.schema import (
    InstanceValidationError,
    LoadedInstance,
    SchemaError,
    instance_from_document,
    load_document,
    load_instance,
)

__version__ = "0.1.0"

__all__ = [
    "AffinePiece",
    "BoundaryEntry",
    "BppResult",
    "CheckResult",
    "DecayReport",
    "DEFAULT_EPSILON",
    "Element",
    "ImageFlag",
    "InstanceValidationError",
    "LambdaReport",
    "LoadedInstance",
    "MappingSpec",
    "MetricInstance",
    "PairWitness",
    "Point",
    "ProximalPairTable",
    "SchemaError",
    "SolverTrace",
    "SpaceSet",
    "TripleWitness",
    "TruncationResult",
    "ValidationReport",
    "VerificationReport",
    "check_condition_lambda",
    "detect_period_two",
    "distance",
    "element_key",
    "enumerate_bpp",
    "format_element",
    "gap_distance",
    "image_trace_diagnostics",
    "instance_from_document",
    "iterate_bpp",
    "load_document",
    "load_instance",
    "nearest_in_set",
    "pair_table",
    "pairwise_distances",
    "perimeter_decay_check",
    "proximal_core",
    "same_element",
    "set_min_distance",
    "truncate_instance",
    "validate_instance",
    "validate_mapping",
    "verify_perimetric_first",
    "verify_perimetric_second",
    "verify_proximal_first",
    "verify_proximal_second",
    "verify_triangle_perimeter_selfmap",
]
