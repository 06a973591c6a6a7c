from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


@dataclass(frozen=True)
class Delta:
    """One structural change at an event.

    ``group`` is a rectangle type (``"C0"``..``"C3"``) for the area sweep or
    a pair set (``"A-"``/``"A+"``) for the matching sweep. ``key`` names the
    item: the two bounding boundaries of a rectangle, or an ``(i, j)`` pair.
    ``weight`` is the rectangle height or the pair's l1 length at the event.
    """

    action: str  # "enter" | "disappear"
    group: str
    key: tuple
    weight: Fraction


@dataclass(frozen=True)
class SweepEvent:
    """All structural changes happening at one value of epsilon.

    ``crossings`` lists every defining equation solved at ``epsilon`` as
    ``(kind, i, j)`` with 1-based indices.
    """

    epsilon: Fraction
    kinds: tuple[str, ...]
    crossings: tuple[tuple[str, int, int], ...]
    deltas: tuple[Delta, ...]


@dataclass(frozen=True)
class PiecewisePiece:
    eps_lo: Fraction
    eps_hi: Fraction
    value_at_lo: Fraction
    slope: Fraction

    def value_at(self, eps) -> Fraction:
        return self.value_at_lo + (eps - self.eps_lo) * self.slope

    @property
    def value_at_hi(self) -> Fraction:
        return self.value_at(self.eps_hi)


@dataclass(frozen=True)
class EventValue:
    """Cost seen at an evaluated epsilon.

    ``left`` and ``right`` are the one-sided limits (``None`` outside the
    domain), ``at`` is the cost of the configuration at exactly ``epsilon``.
    """

    epsilon: Fraction
    left: Optional[Fraction]
    at: Fraction
    right: Optional[Fraction]


@dataclass(frozen=True)
class ScaleResult:
    """Outcome of a scaling optimisation over ``[0, eps_max]``.

    ``best_cost`` is the infimum of the cost. ``best_epsilon`` is the
    smallest epsilon at which the cost or one of its one-sided limits reaches
    it; ``attained`` tells whether the cost at ``best_epsilon`` itself does.
    """

    best_epsilon: Fraction
    best_cost: Fraction
    evaluated_events: int
    eps_max: Fraction
    attained: bool = True
    profile: Optional[tuple[PiecewisePiece, ...]] = None
    samples: Optional[tuple[EventValue, ...]] = None


class _Best:
    """Running minimum that keeps the earliest epsilon on ties."""

    def __init__(self):
        self.value = None
        self.epsilon = None
        self.attained = False

    def offer(self, eps, value, exact):
        if value is None:
            return
        if self.value is None or value < self.value:
            self.value, self.epsilon, self.attained = value, eps, exact
        elif value == self.value and eps == self.epsilon and exact:
            self.attained = True


def group_batches(candidates):
    """Group an epsilon-sorted iterable of tuples by their first field."""
    batch = []
    for cand in candidates:
        if batch and cand[0] != batch[0][0]:
            yield batch[0][0], batch
            batch = []
        batch.append(cand)
    if batch:
        yield batch[0][0], batch
