"""Minimum-area scaling of a query contour against a reference contour.

As the query is stretched, its interior boundary ``t_j`` moves right at rate
``j``. The area is linear until some ``t_j`` crosses a reference boundary
``x_i``; at such a crossing the two boundaries swap places in the merged
boundary order. The sweep keeps that order as a linked list and the slope as
three running sums, one per moving rectangle type:

* ``C1`` (both edges on query boundaries) grows at rate 1,
* ``C2`` (reference edge then query edge ``t_j``) grows at rate ``j``,
* ``C3`` (query edge ``t_{s-1}`` then reference edge) shrinks at rate ``s - 1``.

``C0`` rectangles between two reference boundaries never change width.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from ..core import SegmentMelody, as_rational
from ..errors import QueryLongerThanReference, SweepInconsistency
from ..measures import area_between, extend_query
from .common import (
    Delta,
    EventValue,
    PiecewisePiece,
    ScaleResult,
    SweepEvent,
    _Best,
    group_batches,
)

_ORIGIN = ("o", 0)
_END = ("e", 0)
KIND = "AreaBoundaryCross"


def scale_segment(q: SegmentMelody, eps) -> SegmentMelody:
    """Lengthen every segment of ``q`` by ``eps``: boundary ``j`` moves to ``t_j + j*eps``."""
    eps = as_rational(eps)
    return SegmentMelody(tuple(t + j * eps for j, t in enumerate(q.times)), q.pitches)


def area_eps_max(r: SegmentMelody, q: SegmentMelody) -> Fraction:
    if q.end > r.end:
        raise QueryLongerThanReference(
            f"query lasts {q.end}, reference only {r.end}"
        )
    return (r.end - q.end) / q.n


def area_at(r: SegmentMelody, q: SegmentMelody, eps) -> Fraction:
    """Area between ``r`` and the ``eps``-scaled, end-extended ``q``, from scratch."""
    return area_between(r, extend_query(scale_segment(q, eps), r.end))


def _candidates(r: SegmentMelody, q: SegmentMelody, eps_max: Fraction):
    """One eps-sorted list per interior query boundary, merged through a heap."""
    x, t = r.times, q.times
    lists = []
    for j in range(1, q.n):
        reach = t[j] + j * eps_max
        lists.append(
            [
                (Fraction(x[i] - t[j], j), j, i)
                for i in range(1, r.n)
                if t[j] < x[i] <= reach
            ]
        )
    return heapq.merge(*lists), sum(len(lst) for lst in lists)


class _BoundaryList:
    """Merged order of reference and query boundaries at the current epsilon."""

    def __init__(self, r: SegmentMelody, q: SegmentMelody):
        self.rp = r.pitches
        self.qp = q.pitches
        x, t = r.times, q.times
        inner = [((x[i], 0), ("x", i)) for i in range(1, r.n)]
        # ties at eps = 0 resolve as they will be for any eps > 0
        inner += [((t[j], 1), ("t", j)) for j in range(1, q.n)]
        inner.sort()
        order = [_ORIGIN] + [node for _, node in inner] + [_END]
        self.next = {a: b for a, b in zip(order, order[1:])}
        self.prev = {b: a for a, b in zip(order, order[1:])}
        self.rseg = {}
        self.qseg = {}
        ri = qj = 0
        for node in order[1:-1]:
            if node[0] == "x":
                ri = node[1]
                self.qseg[ri] = qj
            else:
                qj = node[1]
                self.rseg[qj] = ri
        self.sums = {"C1": Fraction(0), "C2": Fraction(0), "C3": Fraction(0)}
        node = _ORIGIN
        while node != _END:
            self._account(node, +1)
            node = self.next[node]

    def rectangle(self, node):
        """``(type, query segment (1-based), height, key)`` of the gap right of ``node``."""
        nxt = self.next[node]
        kind, idx = node
        if kind == "o":
            rs, qs = 0, 0
            rtype = "C1" if nxt[0] == "t" else "C0"
        elif kind == "x":
            rs, qs = idx, self.qseg[idx]
            rtype = "C2" if nxt[0] == "t" else "C0"
        else:
            rs, qs = self.rseg[idx], idx
            rtype = "C1" if nxt[0] == "t" else "C3"
        height = abs(self.rp[rs] - self.qp[qs])
        return rtype, qs + 1, height, (node, nxt)

    def _account(self, node, sign):
        rtype, seg, h, _ = self.rectangle(node)
        if rtype == "C1":
            self.sums["C1"] += sign * h
        elif rtype == "C2":
            self.sums["C2"] += sign * seg * h
        elif rtype == "C3":
            self.sums["C3"] += sign * (seg - 1) * h

    @property
    def slope(self) -> Fraction:
        s = self.sums
        return s["C1"] + s["C2"] - s["C3"]

    def swap(self, j: int, i: int) -> list[Delta]:
        """Move query boundary ``t_j`` past reference boundary ``x_i``."""
        tn, xn = ("t", j), ("x", i)
        if self.next[tn] != xn or self.rseg[j] != i - 1 or self.qseg[i] != j:
            raise SweepInconsistency(f"t_{j} is not immediately left of x_{i}")
        left, right = self.prev[tn], self.next[xn]
        deltas = []
        for node in (left, tn, xn):
            rtype, _, h, key = self.rectangle(node)
            deltas.append(Delta("disappear", rtype, key, h))
            self._account(node, -1)
        self.next[left], self.prev[xn] = xn, left
        self.next[xn], self.prev[tn] = tn, xn
        self.next[tn], self.prev[right] = right, tn
        self.rseg[j] = i
        self.qseg[i] = j - 1
        for node in (left, xn, tn):
            rtype, _, h, key = self.rectangle(node)
            deltas.append(Delta("enter", rtype, key, h))
            self._account(node, +1)
        return deltas


def _sweep(r, q, batch_rng=None):
    """Yield ``(eps, crossings, deltas, slope_after)`` per distinct event epsilon."""
    eps_max = area_eps_max(r, q)
    merged, _ = _candidates(r, q, eps_max)
    boundaries = _BoundaryList(r, q)
    yield None, (), (), boundaries.slope
    for eps, batch in group_batches(merged):
        if batch_rng is not None:
            batch = list(batch)
            batch_rng.shuffle(batch)
        deltas = []
        for _, j, i in batch:
            deltas.extend(boundaries.swap(j, i))
        crossings = tuple(sorted((KIND, i, j) for _, j, i in batch))
        yield eps, crossings, tuple(deltas), boundaries.slope


def area_event_schedule(r: SegmentMelody, q: SegmentMelody) -> list[SweepEvent]:
    """Every epsilon in ``(0, eps_max]`` at which a query boundary meets a
    reference boundary, with the rectangles that vanish and appear there."""
    events = []
    sweep = _sweep(r, q)
    next(sweep)
    for eps, crossings, deltas, _ in sweep:
        events.append(SweepEvent(eps, (KIND,), crossings, deltas))
    return events


def min_area_scaling(
    r: SegmentMelody,
    q: SegmentMelody,
    *,
    profile: bool = False,
    batch_rng=None,
    verify: bool = False,
) -> ScaleResult:
    """Smallest area between ``r`` and the scaled query over ``0 <= eps <= eps_max``.

    The area is continuous and piecewise linear, so it is evaluated at ``0``,
    at every event and at ``eps_max``; ties go to the smallest epsilon. With
    ``verify`` every incremental value is checked against a from-scratch
    evaluation and a :class:`SweepInconsistency` is raised on disagreement.
    """
    eps_max = area_eps_max(r, q)
    value = area_at(r, q, 0)
    best = _Best()
    best.offer(Fraction(0), value, True)
    pieces, samples = [], [EventValue(Fraction(0), None, value, value if eps_max else None)]
    prev = Fraction(0)
    count = 0
    sweep = _sweep(r, q, batch_rng)
    _, _, _, slope = next(sweep)
    for eps, _, _, new_slope in sweep:
        count += 1
        at_eps = value + (eps - prev) * slope
        if verify and at_eps != area_at(r, q, eps):
            raise SweepInconsistency(
                f"incremental area {at_eps} != {area_at(r, q, eps)} at eps={eps}"
            )
        pieces.append(PiecewisePiece(prev, eps, value, slope))
        best.offer(eps, at_eps, True)
        samples.append(EventValue(eps, at_eps, at_eps, at_eps if eps < eps_max else None))
        value, prev, slope = at_eps, eps, new_slope
    if prev < eps_max:
        at_end = value + (eps_max - prev) * slope
        pieces.append(PiecewisePiece(prev, eps_max, value, slope))
        best.offer(eps_max, at_end, True)
        samples.append(EventValue(eps_max, at_end, at_end, None))
    return ScaleResult(
        best_epsilon=best.epsilon,
        best_cost=best.value,
        evaluated_events=count,
        eps_max=eps_max,
        attained=True,
        profile=tuple(pieces) if profile else None,
        samples=tuple(samples) if profile else None,
    )
