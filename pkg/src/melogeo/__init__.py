"""Geometric algorithms for symbolic melodic similarity.

Melodies are step-function contours (:class:`SegmentMelody`) or point
sequences (:class:`PointMelody`) with exact rational times and pitches.
The library measures the area between contours and the t-monotone matching
cost between point sets, finds the query stretch that minimises either
measure, and compresses a melody to k notes optimally under either measure.
"""

from .compression import (
    PairwiseCostTable,
    PointCompression,
    SegmentCompression,
    build_pairwise_costs,
    compress_points,
    compress_segments,
)
from .core import (
    PointMelody,
    Rational,
    SegmentMelody,
    as_rational,
    format_rational,
    segment_to_point,
    shift_pitch,
    transpose_normalize,
    validate,
)
from .measures import Matching, area_between, extend_query, matching_cost, t_monotone_matching
from .scaling import (
    PiecewisePiece,
    ScaleResult,
    SweepEvent,
    area_event_schedule,
    cost_profile,
    matching_event_schedule,
    min_area_scaling,
    min_matching_scaling,
    scale_points,
    scale_segment,
)

__version__ = "0.1.0"

__all__ = [
    "Matching",
    "PairwiseCostTable",
    "PiecewisePiece",
    "PointCompression",
    "PointMelody",
    "Rational",
    "ScaleResult",
    "SegmentCompression",
    "SegmentMelody",
    "SweepEvent",
    "area_between",
    "area_event_schedule",
    "as_rational",
    "build_pairwise_costs",
    "compress_points",
    "compress_segments",
    "cost_profile",
    "extend_query",
    "format_rational",
    "matching_cost",
    "matching_event_schedule",
    "min_area_scaling",
    "min_matching_scaling",
    "scale_points",
    "scale_segment",
    "segment_to_point",
    "shift_pitch",
    "t_monotone_matching",
    "transpose_normalize",
    "validate",
]
