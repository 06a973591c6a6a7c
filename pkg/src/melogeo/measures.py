"""Static similarity measures between two melodies.

Indices inside a :class:`Matching` are 1-based note numbers: ``(i, j)``
pairs reference note ``R_i`` with query note ``Q_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import PointMelody, SegmentMelody, as_rational
from .errors import DurationMismatch, QueryLongerThanReference


@dataclass(frozen=True)
class Matching:
    """A t-monotone matching split by the side each reference note lies on.

    ``a_minus`` holds pairs with ``x_i < t_j`` and ``a_plus`` pairs with
    ``x_i >= t_j``. ``forward[i - 1]`` is the query note reference note ``i``
    was assigned to; ``backward`` lists the ``(j, i)`` assignments made for
    query notes no reference note chose.
    """

    a_minus: frozenset[tuple[int, int]]
    a_plus: frozenset[tuple[int, int]]
    cost: Fraction
    forward: tuple[int, ...]
    backward: tuple[tuple[int, int], ...]

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.a_minus | self.a_plus)


def extend_query(q: SegmentMelody, end) -> SegmentMelody:
    """Prolong the last segment of ``q`` so the melody ends at ``end``."""
    end = as_rational(end)
    if q.end > end:
        raise QueryLongerThanReference(
            f"query lasts {q.end}, longer than the target duration {end}"
        )
    if q.end == end:
        return q
    return SegmentMelody(q.times[:-1] + (end,), q.pitches)


def area_between(r: SegmentMelody, q: SegmentMelody) -> Fraction:
    """Area between two equal-duration contours.

    Walks the merged boundary sequence once, summing
    ``|pitch_r - pitch_q| * width`` over every elementary interval.
    """
    if r.end != q.end:
        raise DurationMismatch(
            f"melodies end at {r.end} and {q.end}; extend the query first"
        )
    x, t = r.times, q.times
    i = j = 0
    left = Fraction(0)
    total = Fraction(0)
    while i < r.n and j < q.n:
        right = min(x[i + 1], t[j + 1])
        total += abs(r.pitches[i] - q.pitches[j]) * (right - left)
        left = right
        if x[i + 1] == right:
            i += 1
        if t[j + 1] == right:
            j += 1
    return total


def _l1(x, p, t, q) -> Fraction:
    return abs(x - t) + abs(p - q)


def _nearest(x, p, ts, qs, g):
    """Index (0-based) of the t-monotone nearest of ``ts`` for point (x, p).

    ``g`` is the number of entries of ``ts`` that are ``<= x``.
    """
    m = len(ts)
    if g == 0:
        return 0
    if ts[g - 1] == x or g == m:
        return g - 1
    mid = (ts[g - 1] + ts[g]) / 2
    if x < mid:
        return g - 1
    if x > mid:
        return g
    if _l1(x, p, ts[g - 1], qs[g - 1]) <= _l1(x, p, ts[g], qs[g]):
        return g - 1
    return g


def t_monotone_matching(r: PointMelody, q: PointMelody) -> Matching:
    """Match every reference note to its t-monotone nearest query note, then
    give each query note left over its own t-monotone nearest reference note.

    Both passes are merges over the two time-sorted sequences, so the whole
    matching takes O(n + m).
    """
    xs, ps = r.times, r.pitches
    ts, qs = q.times, q.pitches
    n, m = len(xs), len(ts)

    forward = []
    used = [False] * m
    g = 0
    for i in range(n):
        while g < m and ts[g] <= xs[i]:
            g += 1
        j = _nearest(xs[i], ps[i], ts, qs, g)
        forward.append(j)
        used[j] = True

    backward = []
    h = 0
    for j in range(m):
        while h < n and xs[h] <= ts[j]:
            h += 1
        if not used[j]:
            backward.append((j, _nearest(ts[j], qs[j], xs, ps, h)))

    a_minus, a_plus = set(), set()
    cost = Fraction(0)
    pairs = [(i, j) for i, j in enumerate(forward)] + [(i, j) for j, i in backward]
    for i, j in pairs:
        cost += _l1(xs[i], ps[i], ts[j], qs[j])
        (a_minus if xs[i] < ts[j] else a_plus).add((i + 1, j + 1))
    return Matching(
        frozenset(a_minus),
        frozenset(a_plus),
        cost,
        tuple(j + 1 for j in forward),
        tuple((j + 1, i + 1) for j, i in backward),
    )


def matching_cost(r: PointMelody, q: PointMelody) -> Fraction:
    return t_monotone_matching(r, q).cost
