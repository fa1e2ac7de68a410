"""Monotonicity testing on augmented hypergrids, with exact desk-scale oracles."""

from .errors import CapacityError, FormatError, IntegrityError, NotGoodError
from .func import BoolFunc, generate, is_monotone, load, restrict_line, save, sort_line
from .grid import (
    AugEdge,
    GridShape,
    MatchingId,
    classify_in_matching,
    compare,
    directed_distance,
    enumerate_augmented_edges,
    enumerate_matching,
    linear_index,
    point_of,
)
from .oracle import (
    brute_force_distance,
    distance_to_monotonicity,
    gamma_minus,
    influence_bound_check,
    isoperimetry_report,
    optimal_matching,
    violated_aug_edges,
)
from .tester import (
    DEFAULT_CALIBRATION,
    amplified_test,
    detection_rate,
    edge_test,
    persistence_fraction,
    sample_tau,
    single_test,
)

__all__ = [
    "AugEdge",
    "BoolFunc",
    "CapacityError",
    "DEFAULT_CALIBRATION",
    "FormatError",
    "GridShape",
    "IntegrityError",
    "MatchingId",
    "NotGoodError",
    "amplified_test",
    "brute_force_distance",
    "classify_in_matching",
    "compare",
    "detection_rate",
    "directed_distance",
    "distance_to_monotonicity",
    "edge_test",
    "enumerate_augmented_edges",
    "enumerate_matching",
    "gamma_minus",
    "generate",
    "influence_bound_check",
    "is_monotone",
    "isoperimetry_report",
    "linear_index",
    "load",
    "optimal_matching",
    "persistence_fraction",
    "point_of",
    "restrict_line",
    "sample_tau",
    "save",
    "single_test",
    "sort_line",
    "violated_aug_edges",
]
