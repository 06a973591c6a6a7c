"""Linear scaling of a query melody against a reference."""

from .area import area_at, area_eps_max, area_event_schedule, min_area_scaling, scale_segment
from .common import Delta, EventValue, PiecewisePiece, ScaleResult, SweepEvent
from .matching import (
    default_eps_max,
    matching_at,
    matching_event_schedule,
    min_matching_scaling,
    scale_points,
)

__all__ = [
    "Delta",
    "EventValue",
    "PiecewisePiece",
    "ScaleResult",
    "SweepEvent",
    "area_at",
    "area_eps_max",
    "area_event_schedule",
    "cost_profile",
    "default_eps_max",
    "matching_at",
    "matching_event_schedule",
    "min_area_scaling",
    "min_matching_scaling",
    "scale_points",
    "scale_segment",
]


def cost_profile(r, q, measure: str, eps_max=None) -> tuple[PiecewisePiece, ...]:
    """Pieces of the cost as a function of epsilon, tiling ``[0, eps_max]``.

    ``measure`` is ``"area"`` (segment melodies) or ``"match"`` (point
    melodies). The area measure has a fixed range, so ``eps_max`` is only
    accepted for ``"match"``.
    """
    if measure == "area":
        if eps_max is not None:
            raise ValueError("the area measure has a fixed epsilon range")
        return min_area_scaling(r, q, profile=True).profile
    if measure == "match":
        return min_matching_scaling(r, q, eps_max, profile=True).profile
    raise ValueError(f"unknown measure {measure!r}; expected 'area' or 'match'")
